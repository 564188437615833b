//! States on truncated algebras and the Monge-Kantorovich distance of the
//! `L_β` seminorm.

mod distance;
mod state;

pub use distance::{
    mk_distance, mk_distance_with_reference, pure_distance_matrix, sandwich_bounds, DistanceMatrix,
    DistanceReport,
};
pub use state::{
    pure_state, pure_state_at, push_agreement, random_density, random_state, DensityMatrix,
    PointState, StateSpace,
};
