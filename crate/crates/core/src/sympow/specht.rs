//! Specht modules from polytabloids, dual Specht modules and `Γ_λ`.
//!
//! Tableaux are lists of rows holding the 0-based letters `0..n`. A tabloid is
//! stored as the row index of each letter. `σ` acts on tableaux by relabeling
//! entries, so `σ e_t = e_{σt}`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{input, resource, Result};
use crate::ffla::{FieldMatrix, PrimeField};
use crate::permgrp::{young_subgroup, Perm, PermGroup};
use crate::repmod::{hom_dim, restrict, tensor, GModule};

use super::{Part, PlaceDecomposition};

/// Largest `|λ|` accepted by the Specht constructions.
pub const SPECHT_MAX_N: usize = 8;

/// A partition as a weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let parts: Vec<usize> = parts.into_iter().filter(|&x| x > 0).collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return input(format!("{parts:?} is not weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.0.first().copied().unwrap_or(0);
        Partition((0..cols).map(|c| self.0.iter().filter(|&&r| r > c).count()).collect())
    }

    /// The rectangle `a^b` with `b` rows of length `a`.
    pub fn rectangle(a: usize, b: usize) -> Partition {
        Partition(if a == 0 { vec![] } else { vec![a; b] })
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for k in (1..=n.min(max)).rev() {
            cur.push(k);
            rec(n - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Number of standard tableaux of shape `λ`.
pub fn hook_length_dim(lambda: &Partition) -> u128 {
    let n = lambda.size();
    let t = lambda.transpose();
    let mut num: u128 = (1..=n as u128).product();
    let mut den: u128 = 1;
    for (r, &len) in lambda.parts().iter().enumerate() {
        for c in 0..len {
            den *= ((len - c - 1) + (t.parts()[c] - r - 1) + 1) as u128;
        }
    }
    num /= den;
    num
}

/// `S^λ` with its standard polytabloid basis.
#[derive(Clone, Debug)]
pub struct SpechtData {
    pub partition: Partition,
    /// Standard tableaux in last-letter order.
    pub standard_tableaux: Vec<Vec<Vec<usize>>>,
    pub module: GModule,
}

fn standard_tableaux(lambda: &Partition) -> Vec<Vec<Vec<usize>>> {
    fn rec(shape: &[usize], next: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..shape.len() {
            let len = cur[r].len();
            if len < shape[r] && (r == 0 || cur[r - 1].len() > len) {
                cur[r].push(next);
                rec(shape, next + 1, n, cur, out);
                cur[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![Vec::new(); lambda.len()];
    rec(lambda.parts(), 0, lambda.size(), &mut cur, &mut out);
    // last-letter order: compare the rows of n-1, n-2, .. in turn
    out.sort_by_key(|t| {
        let rows = row_of(t, lambda.size());
        rows.into_iter().rev().collect::<Vec<_>>()
    });
    out
}

fn row_of(t: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut rows = vec![0; n];
    for (r, row) in t.iter().enumerate() {
        for &x in row {
            rows[x] = r;
        }
    }
    rows
}

fn tabloid_key(rows: &[usize]) -> u64 {
    rows.iter().enumerate().map(|(i, &r)| (r as u64) << (3 * i)).sum()
}

/// All permutations of `0..h` with their parity, in lexicographic order.
fn permutations_with_sign(h: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..h).collect();
    loop {
        let inversions = (0..h).flat_map(|i| (i + 1..h).map(move |j| (i, j))).filter(|&(i, j)| cur[i] > cur[j]).count();
        out.push((cur.clone(), inversions % 2 == 1));
        // next lexicographic permutation
        let Some(i) = (0..h.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..h).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

/// Polytabloid `e_t = Σ_{π ∈ C_t} sgn(π) {π t}` as (tabloid key, coefficient).
fn polytabloid(field: PrimeField, t: &[Vec<usize>], n: usize, perms: &HashMap<usize, Vec<(Vec<usize>, bool)>>) -> HashMap<u64, u32> {
    let cols: Vec<Vec<usize>> = (0..t.first().map_or(0, |r| r.len()))
        .map(|c| t.iter().take_while(|row| row.len() > c).map(|row| row[c]).collect())
        .collect();
    let mut acc: HashMap<u64, u32> = HashMap::new();
    let base = row_of(t, n);
    let mut choice = vec![0usize; cols.len()];
    loop {
        let mut rows = base.clone();
        let mut odd = false;
        for (c, col) in cols.iter().enumerate() {
            let (perm, s) = &perms[&col.len()][choice[c]];
            odd ^= s;
            for (r, &src) in perm.iter().enumerate() {
                rows[col[src]] = r;
            }
        }
        let e = acc.entry(tabloid_key(&rows)).or_insert(0);
        *e = if odd { field.sub(*e, 1) } else { field.add(*e, 1) };
        // odometer over the column groups
        let mut k = 0;
        loop {
            if k == cols.len() {
                return acc;
            }
            choice[k] += 1;
            if choice[k] < perms[&cols[k].len()].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// The Specht module `S^λ` over `S_n`, `n = |λ|`.
pub fn specht(field: PrimeField, lambda: &Partition) -> Result<SpechtData> {
    let n = lambda.size();
    if n > SPECHT_MAX_N {
        return resource(format!("Specht modules are limited to |λ| <= {SPECHT_MAX_N}, got {n}"));
    }
    let group = PermGroup::symmetric(n);
    let tabs = standard_tableaux(lambda);
    let dim = tabs.len();
    let perms: HashMap<usize, Vec<(Vec<usize>, bool)>> =
        lambda.transpose().parts().iter().chain(std::iter::once(&0)).map(|&h| (h, permutations_with_sign(h))).collect();
    let keys: Vec<u64> = tabs.iter().map(|t| tabloid_key(&row_of(t, n))).collect();
    let restrict_std = |poly: &HashMap<u64, u32>| -> Vec<u32> { keys.iter().map(|k| poly.get(k).copied().unwrap_or(0)).collect() };
    // P[s][t]: coefficient of {s} in e_t; unitriangular up to order
    let mut p = FieldMatrix::zeros(field, dim, dim);
    for (j, t) in tabs.iter().enumerate() {
        let v = restrict_std(&polytabloid(field, t, n, &perms));
        for (i, &x) in v.iter().enumerate() {
            p.set(i, j, x);
        }
    }
    let p_inv = p.inverse().expect("standard polytabloids restricted to standard tabloids are invertible");
    let mut gens = Vec::new();
    for sigma in group.generators() {
        let mut mat = FieldMatrix::zeros(field, dim, dim);
        for (j, t) in tabs.iter().enumerate() {
            let moved: Vec<Vec<usize>> = t.iter().map(|row| row.iter().map(|&x| sigma.apply(x)).collect()).collect();
            let coords = p_inv.apply(&restrict_std(&polytabloid(field, &moved, n, &perms)));
            for (i, &x) in coords.iter().enumerate() {
                mat.set(i, j, x);
            }
        }
        gens.push(mat);
    }
    let module = GModule::with_dim(group, field, dim, gens, None)?;
    Ok(SpechtData { partition: lambda.clone(), standard_tableaux: tabs, module })
}

/// The dual Specht module `S_λ = S^{λᵗ} ⊗ sgn`.
pub fn dual_specht(field: PrimeField, lambda: &Partition) -> Result<GModule> {
    let sp = specht(field, &lambda.transpose())?;
    let sgn = GModule::sign(PermGroup::symmetric(lambda.size()), field);
    tensor(&sp.module, &sgn)
}

/// `Γ_λ(X) = H^0(S_n, S_λ ⊗ X^{⊗n})` with its residual `G`-action.
pub fn gamma_lambda(lambda: &Partition, x: &GModule, cap: usize) -> Result<GModule> {
    gamma_lambda_decomposition(lambda, x, cap)?.module(Part::Invariants)
}

/// `dim Γ_λ(X)` without building the residual action.
pub fn gamma_lambda_dim(lambda: &Partition, x: &GModule, cap: usize) -> Result<usize> {
    Ok(gamma_lambda_decomposition(lambda, x, cap)?.dim(Part::Invariants))
}

fn gamma_lambda_decomposition(lambda: &Partition, x: &GModule, cap: usize) -> Result<PlaceDecomposition> {
    let n = lambda.size();
    let s = dual_specht(x.field(), lambda)?;
    let gens = s.group().generators().to_vec();
    let coeff = s.generator_matrices().to_vec();
    if gens.is_empty() {
        // S_0 and S_1 have no generators; the coefficient space is the line
        return PlaceDecomposition::new(x, n, &[], &[], cap);
    }
    PlaceDecomposition::new(x, n, &gens, &coeff, cap)
}

/// Checks `Hom_{S_{n-l} × S_l}(S_μ ⊠ 𝟙, Res S_λ) ≠ 0` where `l` is the last row of `λ`
/// and `μ` is `λ` without it.
pub fn check_branching(field: PrimeField, lambda: &Partition) -> Result<bool> {
    let n = lambda.size();
    if n > 7 {
        return resource(format!("branching checks are limited to |λ| <= 7, got {n}"));
    }
    if lambda.is_empty() {
        return Ok(true);
    }
    let last = *lambda.parts().last().unwrap();
    let mu = Partition(lambda.parts()[..lambda.len() - 1].to_vec());
    let m = n - last;
    let emb = young_subgroup(&[m, last])?;
    let s_lambda = restrict(&emb, &dual_specht(field, lambda)?)?;
    let s_mu = dual_specht(field, &mu)?;
    let mut gens = Vec::new();
    for g in emb.sub.generators() {
        let head: Vec<usize> = (0..m).map(|i| g.apply(i)).collect();
        let h = if head.iter().all(|&i| i < m) { Perm::from_images(head)? } else { Perm::identity(m) };
        gens.push(s_mu.element_matrix(&h)?);
    }
    let outer = GModule::with_dim(emb.sub.clone(), field, s_mu.dim(), gens, None)?;
    Ok(hom_dim(&outer, &s_lambda)? >= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repmod::iso_test;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(hook_length_dim(&part(&[2, 1])), 2);
        assert_eq!(hook_length_dim(&part(&[3, 2])), 5);
        assert_eq!(hook_length_dim(&part(&[4, 2, 1, 1])), 90);
        // Σ (f^λ)^2 = n!
        for n in 1..=8usize {
            let s: u128 = partitions(n).iter().map(|l| hook_length_dim(l).pow(2)).sum();
            assert_eq!(s, (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn specht_dims_match_hook_lengths() {
        for n in 1..=6 {
            for l in partitions(n) {
                let sp = specht(f(3), &l).unwrap();
                assert_eq!(sp.module.dim() as u128, hook_length_dim(&l), "{l}");
                assert_eq!(sp.standard_tableaux.len(), sp.module.dim());
            }
        }
    }

    #[test]
    fn small_specht_modules() {
        let k = f(3);
        let triv = specht(k, &part(&[3])).unwrap().module;
        assert_eq!(triv.dim(), 1);
        assert!(triv.is_trivial_action());
        let sgn = specht(k, &part(&[1, 1])).unwrap().module;
        assert!(iso_test(&sgn, &GModule::sign(PermGroup::symmetric(2), k)).unwrap().is_isomorphic());
        assert_eq!(specht(k, &part(&[2, 1])).unwrap().module.dim(), 2);
    }

    #[test]
    fn dual_specht_of_row_is_trivial() {
        let k = f(5);
        let s = dual_specht(k, &part(&[4])).unwrap();
        assert!(s.is_trivial_action());
        let sgn = dual_specht(k, &part(&[1, 1, 1])).unwrap();
        assert!(iso_test(&sgn, &GModule::sign(PermGroup::symmetric(3), k)).unwrap().is_isomorphic());
    }

    #[test]
    fn last_letter_order() {
        let t = standard_tableaux(&part(&[2, 1]));
        // letter 2 in row 0 precedes letter 2 in row 1
        assert_eq!(t, vec![vec![vec![0, 2], vec![1]], vec![vec![0, 1], vec![2]]]);
    }

    #[test]
    fn gamma_lambda_examples() {
        let k = f(3);
        let triv1 = PermGroup::trivial(1);
        let k2 = GModule::trivial(triv1.clone(), k, 2);
        assert_eq!(gamma_lambda(&part(&[1, 1]), &k2, 1000).unwrap().dim(), 1);
        // H^0 of S_3 on the restricted 2-dim S_λ always sees its socle, so this is not 0 at p = 3
        let k11 = GModule::with_dim(triv1.clone(), k, 2, vec![], Some(vec![0, 1])).unwrap();
        assert_eq!(gamma_lambda(&part(&[2, 2]), &k11, 1000).unwrap().dim(), 2);
        let k11 = GModule::with_dim(triv1, f(5), 2, vec![], Some(vec![0, 1])).unwrap();
        assert_eq!(gamma_lambda(&part(&[2, 2]), &k11, 1000).unwrap().dim(), 0);
    }

    #[test]
    fn gamma_lambda_of_row_is_gamma() {
        for sizes in [vec![1usize], vec![2], vec![2, 1], vec![3]] {
            let x = GModule::cp_module(3, &sizes).unwrap();
            for n in 1..=4 {
                let a = gamma_lambda(&Partition(vec![n]), &x, 10_000).unwrap();
                let b = super::super::gamma_power(&x, n, 10_000).unwrap();
                assert_eq!(a.dim(), b.dim());
                assert!(iso_test(&a, &b).unwrap().is_isomorphic());
            }
        }
    }

    #[test]
    fn branching() {
        assert!(check_branching(f(3), &part(&[2, 1])).unwrap());
        assert!(check_branching(f(3), &part(&[4])).unwrap());
        assert!(check_branching(f(2), &part(&[2, 2])).unwrap());
        for p in [2u32, 3, 5] {
            for n in 1..=5 {
                for l in partitions(n) {
                    assert!(check_branching(f(p), &l).unwrap(), "p={p} {l}");
                }
            }
        }
    }
}
