//! Global verification tooling: a non-local reference construction, metrics
//! on explicit subgraphs, sweeps, and the seed-restart wrapper.

pub mod consistency;
pub mod lemmas;
pub mod metrics;
pub mod reference;
pub mod report;
pub mod scaling;
pub mod sweep;
pub mod wrapper;

pub use consistency::{consistency_check, ConsistencyReport};
pub use metrics::{bridges, cell_stretch, check_connectivity, measure_stretch, StretchStats};
pub use reference::{reference_partition, reference_spanner, ReferenceSpanner};
pub use report::{build_report, SpannerReport};
pub use scaling::{scaling_report, ScalingReport};
pub use sweep::{sweep, Order, QueryStats, SweepOptions, SweepResult};
pub use wrapper::{wrapper_select_seed, WrapperOutcome};
