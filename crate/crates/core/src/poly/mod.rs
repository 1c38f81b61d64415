//! Polynomial matrices over finite fields and the coset-witness pipeline.

pub mod alt;
pub mod brute;
pub mod multipoly;
pub mod psl2;
pub mod specialize;
pub mod suzuki;
pub mod symmat;

pub use alt::{alt_case_witness, AltWitness};
pub use brute::{coset_witness_bruteforce, is_coset_witness, probe_identity_twists, BruteMode, BruteResult, ProbeRow};
pub use multipoly::{Family, Monomial, MultiPoly, Var};
pub use psl2::{
    build_a, coset_witness_psl2, noncentrality_certificate, psl2_to_dense, random_problem, twist_symbolic, Case, CaseChoice,
    CosetWitness, CosetWitnessProblem, FieldMode,
};
pub use specialize::specialize_nonzero;
pub use suzuki::{e_minus, e_plus, lemma_uv_holds, suzuki_symbolic_suite, SuzukiReport};
pub use symmat::{SymMat, Witness};
