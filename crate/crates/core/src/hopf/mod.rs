//! Iterated integrals, the Goncharov coproduct, multiple polylogarithms and
//! the quasi-shuffle algebra.

pub mod ii;
pub mod li;
pub mod qs;
pub mod verify;

pub use ii::{
    coassociativity_sides, cor_to_ii, coproduct, coproduct_mono, goncharov_coproduct, ii_to_lie, path_compose,
    shuffle_product, shuffle_seqs, HopfElem, HopfTensor, IISym, Mono,
};
pub use li::{depth_bound, li_expand, li_to_hopf, li_to_lie, min_nonzero, LiSym};
pub use qs::{qshuffle, shuffle_words, QSWord, WordComb};
pub use verify::{
    certify_depth, cyclic_element, depth1_inversion_element, depth_tier, distribution_ii_element, inversion_element,
    li_hom_element, li_hom_hopf, prepare_depth, prepare_depth1_inversion, prepare_distribution_hopf, prepare_inversion, prepare_stuffle_antipode, quasi_shuffle_relation,
    prepare_li_homomorphism, stuffle_antipode_element, verify_cyclic_mod_depth, verify_depth1_inversion,
    verify_distribution_hopf, verify_inversion, verify_li_homomorphism, verify_stuffle_antipode, Tier,
};
