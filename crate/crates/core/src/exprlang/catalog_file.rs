//! Identity catalog files:
//!
//! ```text
//! # comment
//! params 2 1 2
//! scomm(Ap(1), Ap(3), 1) == 0
//! ```

use super::ast::Identity;
use super::parse::parse_identity;
use crate::error::{Error, Result};
use crate::fockspace::FockParams;

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogLine {
    /// 1-based line number in the source.
    pub line: usize,
    pub source: String,
    pub identity: Identity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogFile {
    pub params: FockParams,
    pub identities: Vec<CatalogLine>,
}

pub fn parse_catalog(text: &str) -> Result<CatalogFile> {
    let mut params = None;
    let mut identities = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("params") {
            if params.is_some() {
                return Err(Error::Catalog(format!("line {line}: duplicate params header")));
            }
            let nums: Vec<usize> = rest
                .split_whitespace()
                .map(|w| w.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Catalog(format!("line {line}: params header needs three integers n m p")))?;
            let [n, m, p] = nums[..] else {
                return Err(Error::Catalog(format!("line {line}: params header needs three integers n m p")));
            };
            params = Some(FockParams::new(n, m, p)?);
            continue;
        }
        if params.is_none() {
            return Err(Error::Catalog(format!("line {line}: identity before the params header")));
        }
        let identity = parse_identity(body).map_err(|e| Error::Catalog(format!("line {line}: {e}")))?;
        identities.push(CatalogLine {
            line,
            source: body.to_string(),
            identity,
        });
    }
    let params = params.ok_or_else(|| Error::Catalog("missing params header".into()))?;
    Ok(CatalogFile { params, identities })
}
