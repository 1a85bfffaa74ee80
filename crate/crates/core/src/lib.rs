//! Exact enumeration machinery for permutation statistics on `S_n`:
//! descents of type 2, pure excedances, cycle classifications, crossing and
//! nesting refinements, J-fraction expansions, gamma expansions, the
//! bijections that transport these statistics, and a harness that checks
//! every identity among them by exhaustive enumeration.

pub mod bijections;
pub mod master;
pub mod perm;
pub mod poly;
pub mod refined;
pub mod series;
pub mod stats;
pub mod verify;

pub use bijections::{BijectionError, Orbit};
pub use master::{LambdaMarker, MasterError, Scheme, Which};
pub use perm::{parse, CycleDecomposition, PermError, PermFilter, Permutation};
pub use poly::{Assignment, Monomial, Poly, PolyError, VarId};
pub use refined::{RefinedProfile, VertexStats};
pub use series::{Family, JFraction, Series, SeriesError};
pub use stats::{Boundary, Stat, StatError, StatVector};
pub use verify::{Report, Verdict, VerifyConfig, VerifyError};
