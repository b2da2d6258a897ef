//! Frozen values, each derived by hand independently of the code under test.

use twistlab::ffla::{FieldMatrix, PrimeField};
use twistlab::frob::{self, BracketValue, VerdictStatus};
use twistlab::permgrp::{Perm, PermGroup};
use twistlab::repmod::{self, GModMorphism, GModule};
use twistlab::superrep::{odd_line, super_space};
use twistlab::sympow::{self, Partition};
use twistlab::theorems::{iterated_triv_dims, klein_four_module};
use twistlab::verlinde::{self, VerObject};

const CAP: usize = 5_000_000;

fn k(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn ver(p: u32, mults: &[usize]) -> VerObject {
    VerObject { p, multiplicities: mults.to_vec() }
}

#[test]
fn fixed_points_of_the_regular_module() {
    // the fixed space of a cyclic permutation matrix is spanned by the all-ones vector
    let x = GModule::regular(PermGroup::cyclic(3), k(3)).unwrap();
    assert_eq!(repmod::h0(&x).unwrap().dim(), 1);
    assert_eq!(repmod::h_0(&x).unwrap().dim(), 1);
    // the fixed line of an indecomposable of dim > 1 lies in the augmentation
    assert_eq!(repmod::triv_dim(&x), 0);
}

#[test]
fn fusion_rules() {
    let t3 = verlinde::fusion_table(3).unwrap();
    assert_eq!(t3[1][1], ver(3, &[1, 0]));
    let t5 = verlinde::fusion_table(5).unwrap();
    assert_eq!(t5[1][1], ver(5, &[1, 0, 1, 0]));
    assert_eq!(t5[2][2], ver(5, &[1, 0, 1, 0]));
    assert_eq!(t5[3][3], ver(5, &[1, 0, 0, 0]));
    assert_eq!(t5[1][3], ver(5, &[0, 0, 1, 0]));
}

#[test]
fn powers_of_simples_in_ver_p_vanish_past_the_truncation() {
    for p in [3u32, 5, 7] {
        for j in 2..p as usize {
            let n = p as usize - j + 1;
            assert!(verlinde::ver_sym_power(j, n, p).unwrap().is_zero(), "Sym^{n} M̄_{j}, p = {p}");
            assert!(verlinde::ver_gamma_power(j, n, p).unwrap().is_zero(), "Γ^{n} M̄_{j}, p = {p}");
        }
    }
    // the first power of a simple is itself
    assert_eq!(verlinde::ver_sym_power(2, 1, 5).unwrap(), VerObject::simple(5, 2).unwrap());
}

#[test]
fn semisimplification_of_jordan_blocks() {
    // M_p is projective hence negligible; smaller blocks map to their simples
    let x = GModule::cp_module(3, &[1, 2, 3, 2]).unwrap();
    assert_eq!(verlinde::semisimplify(&x).unwrap(), ver(3, &[1, 2]));
    assert_eq!(verlinde::fr_plus_ver(&GModule::jordan_block(3, 2).unwrap()).unwrap(), VerObject::zero(3));
    assert_eq!(verlinde::fr_plus_ver(&GModule::cp_module(3, &[1, 2]).unwrap()).unwrap(), ver(3, &[1, 0]));
}

#[test]
fn klein_four_iterated_coinvariant_quotient() {
    let x = klein_four_module();
    let h = PermGroup::new(4, vec![Perm::transposition(4, 0, 1)], "<a>").unwrap();
    assert_eq!(iterated_triv_dims(&x, &h).unwrap(), (0, 1));
}

#[test]
fn twist_of_a_trivial_module() {
    // Triv_{S_n} of ⊗^n k^d is spanned by the pure powers v^{⊗n}, so it has dim d
    let x = GModule::trivial(PermGroup::cyclic(2), k(2), 3);
    for j in 1..=2 {
        let t = frob::fr_plus(&x, j, CAP).unwrap();
        assert_eq!(t.object.dim(), 3);
        assert_eq!(t.n, 1 << j);
    }
}

#[test]
fn twist_of_a_super_space_keeps_the_even_part() {
    for p in [3, 5] {
        let x = super_space(k(p), 1, 1).unwrap();
        assert_eq!(frob::fr_plus(&x, 1, CAP).unwrap().object.super_dim(), (1, 0));
        // Fr₋ sees the odd part, shifted to even degree
        assert_eq!(frob::fr_minus(&x, 1, CAP).unwrap().object.dim(), 1);
    }
}

#[test]
fn odd_line_powers() {
    let l = odd_line(k(3)).unwrap();
    assert_eq!(sympow::sym_power(&l, 2, CAP).unwrap().dim(), 0);
    assert_eq!(sympow::lambda_power(&l, 2, CAP).unwrap().dim(), 1);
    assert_eq!(sympow::gamma_power(&l, 2, CAP).unwrap().dim(), 0);
}

#[test]
fn powers_of_a_plain_vector_space() {
    let x = GModule::trivial(PermGroup::trivial(1), k(5), 3);
    assert_eq!(sympow::sym_power(&x, 2, CAP).unwrap().dim(), 6);
    assert_eq!(sympow::gamma_power(&x, 2, CAP).unwrap().dim(), 6);
    assert_eq!(sympow::lambda_power(&x, 2, CAP).unwrap().dim(), 3);
    assert_eq!(sympow::lambda_power(&x, 4, CAP).unwrap().dim(), 0);
}

#[test]
fn specht_dimensions() {
    // hook length formula: 3, 2, 2, 5
    for (parts, d) in [(vec![3, 1], 3), (vec![2, 2], 2), (vec![2, 1], 2), (vec![3, 2], 5)] {
        let lambda = Partition::new(parts).unwrap();
        for p in [2, 3, 5] {
            assert_eq!(sympow::specht(k(p), &lambda).unwrap().module.dim(), d);
        }
    }
}

#[test]
fn brackets_of_super_spaces() {
    // Fr₊ of k^{m|n} is k^{m|0} at every depth, and Fr₋ is k^{n|0}
    for (m, n) in [(1, 0), (2, 1), (1, 2), (2, 2)] {
        let x = super_space(k(3), m, n).unwrap();
        assert_eq!(frob::bracket_one(&x, 2, None, CAP).unwrap().value, BracketValue::Finite(m));
        assert_eq!(frob::bracket_bar(&x, 2, None, CAP).unwrap().value, BracketValue::Finite(n));
    }
}

#[test]
fn locally_free_verdicts() {
    let x = GModule::cp_module(3, &[1, 2]).unwrap();
    let v = frob::check_locally_free(&x, 2, None, CAP).unwrap();
    assert_eq!(v.status, VerdictStatus::HoldsUpToBound);
    assert_eq!(v.value, BracketValue::Finite(3));
    // Λ^2 k^{1|1} ≠ 0 but Λ^2 Fr₊ k^{1|1} = Λ^2 k = 0
    let s = super_space(k(3), 1, 1).unwrap();
    let v = frob::check_locally_free(&s, 1, None, CAP).unwrap();
    assert_eq!(v.status, VerdictStatus::Fails);
    assert!(v.definitive);
    assert_eq!(v.witness, Some((2, 1)));
}

#[test]
fn pth_power_of_an_invariant_vector() {
    // α(1) = e1 spans the invariants of the regular C_2-module; e1^2 survives in Sym^2
    let x = GModule::jordan_block(2, 2).unwrap();
    let f = x.field();
    let unit = GModule::trivial(x.group().clone(), f, 1);
    let alpha = GModMorphism::new(unit, x.clone(), FieldMatrix::column_vector(f, &[1, 0])).unwrap();
    assert!(frob::alpha_power(&alpha, 2, CAP).unwrap().nonzero);
}

#[test]
fn gamma_of_rectangles_at_larger_primes() {
    // at p = 5 the rectangle (2,2) kills k^{1|1} as in characteristic zero
    let x = super_space(k(5), 1, 1).unwrap();
    let rect = Partition::rectangle(2, 2);
    assert_eq!(sympow::gamma_lambda_dim(&rect, &x, CAP).unwrap(), 0);
}
