//! Jones-type invariants of periodic links and the periodicity criteria
//! built on them.

pub mod budget;
pub mod criteria;
pub mod diagram;
pub mod equivariant;
pub mod khovanov;
mod error;
pub mod laurent;
pub mod states;

pub use budget::{Budget, BudgetError};
pub use criteria::{
    ideal_member, murasugi_verify, przytycki_check, przytycki_variant_check, strengthened_check, strengthened_check_at,
    strengthened_level, IdealChain, Outcome, Verdict,
};
pub use diagram::{
    AnnularDiagram, DiagramError, LinkDiagram, PeriodicTangleCode, PlanarDiagram, PortRef, Role, Sign,
    Skeleton, Tangle,
};
pub use equivariant::{DiffJonesVector, check_decomposition, check_skein, dj_state_sum};
pub use error::{Error, Result};
pub use khovanov::{ingest_ranks, kh_ranks, RankTable};
pub use laurent::{LaurentError, LaurentPoly, ModPoly};
pub use states::{jones_kauffman, KauffmanState, StateStats};
