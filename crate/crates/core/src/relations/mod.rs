//! Relation catalog, verifier and the Chevalley layer.

mod catalog;
mod chevalley;
mod linsolve;
mod order;
mod report;

pub use catalog::{
    chevalley_catalog, defining_catalog, derived_catalog, vacuum_catalog, CagRelation, ChevRelation, Entry, RelationId,
    TripleForm,
};
pub use chevalley::{chevalley_h_eigenvalue, q_index_exponent, reconstruct_chevalley, ChevalleyFamily, ChevalleySet};
pub use linsolve::{Solution, SparseSystem};
pub use order::{cartan_entry, cartan_matrix, epsilon, root_order_less, PositiveRoot};
pub use report::{
    check_cag, check_chevalley, max_residual, realize_for, verify_all, verify_cartan_kac_serre, verify_defining,
    verify_derived, verify_vacuum, RelationReport, Status, VerifyReport,
};
