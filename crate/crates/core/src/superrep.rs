//! Super vector spaces and graded modules.
//!
//! A super module is a [`GModule`] carrying a parity vector; all tensor-power
//! machinery reads the parity and applies Koszul signs. Characteristic 2 is
//! rejected at construction.

use crate::error::{input, Result};
use crate::ffla::PrimeField;
use crate::permgrp::{Perm, PermGroup};
use crate::repmod::GModule;
use crate::sympow::{SignedPermutation, TensorPower};

/// `k^{even|odd}` over the trivial group, even basis vectors first.
pub fn super_space(field: PrimeField, even: usize, odd: usize) -> Result<GModule> {
    let parity = std::iter::repeat_n(0u8, even).chain(std::iter::repeat_n(1u8, odd)).collect();
    GModule::with_dim(PermGroup::trivial(1), field, even + odd, vec![], Some(parity))
}

/// The unit `𝟙` as a super space.
pub fn even_line(field: PrimeField) -> Result<GModule> {
    super_space(field, 1, 0)
}

/// The odd line `1̄`.
pub fn odd_line(field: PrimeField) -> Result<GModule> {
    super_space(field, 0, 1)
}

/// Regards an ordinary module as purely even.
pub fn as_super(x: &GModule) -> Result<GModule> {
    if x.is_super() {
        return Ok(x.clone());
    }
    x.with_parity(Some(vec![0; x.dim()]))
}

/// `X ⊠ 1̄`: same action, every parity flipped.
pub fn parity_shift(x: &GModule) -> Result<GModule> {
    let par = (0..x.dim()).map(|i| 1 - x.parity_of(i)).collect();
    x.with_parity(Some(par))
}

/// The signed permutation of words by which `σ` acts on a super tensor power.
pub fn super_braiding_action(t: &TensorPower, sigma: &Perm) -> Result<SignedPermutation> {
    if !t.base().is_super() {
        return input("the Koszul braiding needs a graded base module");
    }
    t.place_operator(sigma)
}
