//! Classical automata: DFAs, PFAs, minimization, products, unary cycle
//! structure, self-reachability, and the forbidden-construction detectors.

mod dfa;
mod forbidden;
mod minimize;
mod pfa;
mod product;
pub(crate) mod search;
mod unary;

pub use dfa::Dfa;
pub use forbidden::{ForbiddenWitness, WitnessKind};
pub use pfa::Pfa;
pub(crate) use product::reachable_pairs;
pub use product::SetOp;
pub use unary::UnaryCycleProfile;
