//! Twisted commutator equations over semisimple groups.

mod gowers;
mod repdeg;
mod hypotheses;
mod solver;
mod twisted;
mod witness;

pub use gowers::{gowers_check, gowers_set_size, GowersReport};
pub use repdeg::{check_r_table, irreducible_characters, min_real_rep_degree, r_table, IrrChar, RTableCheck, R_TABLE};
pub use hypotheses::{observe_conditions, surjectivity_hypotheses, HypothesisReport, ObserveReport};
pub use solver::{
    commutator_product, commutator_system_solve, eliminate_and_solve, random_system, EquationSystem, Solution, Twist,
    DEFAULT_RETRIES,
};
pub use twisted::{
    aut_centralizer, basic_identities, class_product_covers, random_factor_aut, random_nontrivial_aut, twisted_bracket,
    twisted_class, twisted_commutator, twisted_map_surjective, CoverReport, IdentityReport, SurjectivityReport,
};
pub use witness::{power_twist_witness, pth_power_witness, TwistWitness};
