//! Machine checks of the known facts and implications about weakly APN
//! S-boxes: fixed tables checked against their claimed measures, and
//! implications checked over seeded random permutations.

pub mod facts;
pub mod fixtures;
pub mod implications;
pub mod sampling;

pub use facts::{verify_facts, FactCase, FactReport, FactStatus};
pub use fixtures::{FixtureError, FixtureSource, NamedSbox};
pub use implications::{check_implications, Implication, ImplicationReport};
