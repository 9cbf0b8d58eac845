//! Fuzzification, product inference and defuzzification.

pub mod defuzz;
pub mod membership;
pub mod partition;
pub mod rules;

pub use defuzz::{center_of_area, max_criterion, mean_of_maximum, DiscreteFuzzySet};
pub use membership::{MembershipFunction, MembershipKind};
pub use partition::Partition;
pub use rules::{ActivationVector, RuleBase, Scratch, UNDERFLOW_FLOOR};
