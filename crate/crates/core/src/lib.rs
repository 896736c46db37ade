//! Exact computation with finitely generated abelian lattice-ordered groups.
//!
//! Groups are realized as ℓ-subgroups of finite products of
//! lexicographically ordered `Z^k` fibers. Convex ℓ-subgroups are cut out by
//! level patterns, which makes the frame of convex ℓ-subgroups, the prime
//! spectrum with its topologies, and the Martínez and Yosida properties all
//! finite, exactly decidable objects.

pub mod ambient;
pub mod deciders;
pub mod exact;
pub mod frame;
pub mod gb;
pub mod lgroup;
pub mod spectra;

pub use ambient::{AVec, Ambient, AmbientError, Fiber, LevelPattern};
pub use exact::{Int, IntLattice, IntVec, LatticeError};
pub use frame::{ConvexSubgroup, CoordinateMap, Frame, FrameError, SubgroupId, DEFAULT_FRAME_CAP};
pub use lgroup::{ClosureStatus, LGroup, LGroupError};
