//! Finite abelian groups in invariant-factor form, automorphism counting,
//! Hom/Ext cardinalities, and the two-eigenspace modules that carry a
//! quadratic Galois action.

use crate::arith::{factor, gcd_i64};
use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// A finite abelian group as an invariant-factor chain d1 | d2 | ... | dk,
/// each di >= 2. The empty chain is the trivial group. Canonicalizing on
/// construction makes equality coincide with isomorphism.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinAbGroup {
    invariants: Vec<u64>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { invariants: vec![] }
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1);
        if n == 1 {
            Self::trivial()
        } else {
            FinAbGroup { invariants: vec![n] }
        }
    }

    /// Build from an arbitrary list of cyclic factors, canonicalizing to the
    /// invariant-factor chain.
    pub fn from_factors(factors: &[u64]) -> Self {
        // exponent lists per prime, each sorted descending
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u32>> = Default::default();
        for &f in factors {
            assert!(f >= 1, "cyclic factor must be positive");
            for (p, e) in factor(f) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        for exps in by_prime.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a));
        }
        let depth = by_prime.values().map(|v| v.len()).max().unwrap_or(0);
        // invariant k (counted from the largest) multiplies the k-th largest
        // p-power over all primes
        let mut chain: Vec<u64> = Vec::new();
        for slot in 0..depth {
            let mut d: u64 = 1;
            for (p, exps) in &by_prime {
                if let Some(&e) = exps.get(slot) {
                    d = d
                        .checked_mul(p.pow(e))
                        .expect("invariant factor overflows u64");
                }
            }
            chain.push(d);
        }
        chain.reverse();
        FinAbGroup { invariants: chain }
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn order(&self) -> u128 {
        self.invariants
            .iter()
            .fold(1u128, |acc, &d| acc.checked_mul(d as u128).expect("group order overflows u128"))
    }

    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    /// The ell-primary part.
    pub fn ell_part(&self, ell: u64) -> FinAbGroup {
        let parts: Vec<u64> = self
            .invariants
            .iter()
            .map(|&d| {
                let mut q = 1u64;
                let mut d = d;
                while d % ell == 0 {
                    d /= ell;
                    q *= ell;
                }
                q
            })
            .filter(|&q| q > 1)
            .collect();
        FinAbGroup { invariants: parts }
    }

    /// The S-primary part for a set of primes.
    pub fn s_part(&self, s: &[u64]) -> FinAbGroup {
        let factors: Vec<u64> = self
            .invariants
            .iter()
            .map(|&d| s.iter().map(|&p| p.pow(crate::arith::valuation(d, p))).product())
            .filter(|&q: &u64| q > 1)
            .collect();
        FinAbGroup::from_factors(&factors)
    }

    /// Number of elements killed by n: prod gcd(di, n).
    pub fn count_order_dividing(&self, n: u64) -> u128 {
        self.invariants
            .iter()
            .map(|&d| gcd_i64(d as i64, n as i64) as u128)
            .product()
    }

    /// Size of the ell-torsion subgroup.
    pub fn ell_torsion(&self, ell: u64) -> u128 {
        self.count_order_dividing(ell)
    }

    /// F_ell-dimension of G[ell].
    pub fn ell_rank(&self, ell: u64) -> usize {
        self.invariants.iter().filter(|&&d| d % ell == 0).count()
    }

    /// Quotient G/nG as a group: invariants gcd(di, n).
    pub fn quotient_by_multiples(&self, n: u64) -> FinAbGroup {
        let f: Vec<u64> = self
            .invariants
            .iter()
            .map(|&d| gcd_i64(d as i64, n as i64) as u64)
            .filter(|&g| g > 1)
            .collect();
        FinAbGroup::from_factors(&f)
    }

    /// Exact order of Aut(G): product over primes of the p-group counts
    /// (the classical formula of Hall, in the Hillar-Rhea shape).
    pub fn aut_order(&self) -> BigUint {
        let mut primes: Vec<u64> = Vec::new();
        for &d in &self.invariants {
            for (p, _) in factor(d) {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        let mut total = BigUint::one();
        for p in primes {
            // ascending exponent list e1 <= e2 <= ... <= en of the p-part
            let exps: Vec<u32> = self
                .invariants
                .iter()
                .map(|&d| crate::arith::valuation(d, p))
                .filter(|&e| e > 0)
                .collect();
            let n = exps.len();
            let bp = BigUint::from(p);
            // d_k = max index with e = e_k, c_k = min index with e = e_k (1-based)
            for k in 0..n {
                let dk = (0..n).rev().find(|&l| exps[l] == exps[k]).unwrap() + 1;
                total *= bp.pow(dk as u32) - bp.pow(k as u32);
            }
            for j in 0..n {
                let dj = (0..n).rev().find(|&l| exps[l] == exps[j]).unwrap() + 1;
                total *= bp.pow(exps[j] * (n - dj) as u32);
            }
            for i in 0..n {
                let ci = (0..n).find(|&l| exps[l] == exps[i]).unwrap() + 1;
                total *= bp.pow((exps[i] - 1) * (n - ci + 1) as u32);
            }
        }
        total
    }

    /// Iterate all elements as exponent vectors (for brute-force oracles;
    /// keep the order small).
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let dims = self.invariants.clone();
        let total = self.order() as usize;
        (0..total).map(move |mut idx| {
            let mut v = Vec::with_capacity(dims.len());
            for &d in &dims {
                v.push((idx % d as usize) as u64);
                idx /= d as usize;
            }
            v
        })
    }
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariants.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// #Hom(A, B) = prod_{i,j} gcd(di(A), dj(B)).
pub fn hom_size(a: &FinAbGroup, b: &FinAbGroup) -> BigUint {
    let mut total = BigUint::one();
    for &da in a.invariants() {
        for &db in b.invariants() {
            total *= BigUint::from(gcd_i64(da as i64, db as i64) as u64);
        }
    }
    total
}

/// #Ext^1(A, B); equal to #Hom(A, B) for finite abelian groups.
pub fn ext_size(a: &FinAbGroup, b: &FinAbGroup) -> BigUint {
    hom_size(a, b)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum C2ModuleError {
    #[error("eigenmodule decomposition requires odd order, got {0}")]
    EvenOrder(u128),
}

/// A module over the group ring of the order-2 group, of odd order, split
/// into +1 and -1 eigenmodules.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct C2FinAbGroup {
    pub plus: FinAbGroup,
    pub minus: FinAbGroup,
}

impl C2FinAbGroup {
    pub fn new(plus: FinAbGroup, minus: FinAbGroup) -> Result<Self, C2ModuleError> {
        let m = C2FinAbGroup { plus, minus };
        let ord = m.order();
        if ord % 2 == 0 {
            return Err(C2ModuleError::EvenOrder(ord));
        }
        Ok(m)
    }

    pub fn trivial() -> Self {
        C2FinAbGroup {
            plus: FinAbGroup::trivial(),
            minus: FinAbGroup::trivial(),
        }
    }

    pub fn order(&self) -> u128 {
        self.plus.order() * self.minus.order()
    }
}

/// #Hom in the category of such modules: matching eigenparts pair up.
pub fn c2_hom_size(a: &C2FinAbGroup, b: &C2FinAbGroup) -> BigUint {
    hom_size(&a.plus, &b.plus) * hom_size(&a.minus, &b.minus)
}

/// #Ext^1 in the category of such modules.
pub fn c2_ext_size(a: &C2FinAbGroup, b: &C2FinAbGroup) -> BigUint {
    ext_size(&a.plus, &b.plus) * ext_size(&a.minus, &b.minus)
}

/// All odd-order groups with order at most `bound` built from the given
/// primes, in a deterministic order.
pub fn groups_with_order_bound(primes: &[u64], bound: u128) -> Vec<FinAbGroup> {
    // per prime: all partitions [e1 >= e2 >= ...] with p^(sum) <= bound
    fn partitions_bounded(p: u64, bound: u128) -> Vec<Vec<u32>> {
        let mut max_total = 0u32;
        let mut acc = 1u128;
        while acc <= bound / p as u128 {
            acc *= p as u128;
            max_total += 1;
        }
        fn rec(budget: u32, max_part: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            out.push(cur.clone());
            for part in 1..=max_part.min(budget) {
                cur.push(part);
                rec(budget - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(max_total, max_total, &mut Vec::new(), &mut out);
        out
    }

    let mut result = vec![FinAbGroup::trivial()];
    let mut combos: Vec<(u128, Vec<u64>)> = vec![(1, vec![])];
    for &p in primes {
        let parts = partitions_bounded(p, bound);
        let mut next = Vec::new();
        for (ord, factors) in &combos {
            for part in &parts {
                let extra: u128 = part.iter().map(|&e| (p as u128).pow(e)).product();
                if ord * extra <= bound {
                    let mut f = factors.clone();
                    f.extend(part.iter().map(|&e| p.pow(e)));
                    next.push((ord * extra, f));
                }
            }
        }
        combos = next;
    }
    for (ord, factors) in combos {
        if ord > 1 {
            result.push(FinAbGroup::from_factors(&factors));
        }
    }
    result.sort_by_key(|g| (g.order(), g.invariants().to_vec()));
    result.dedup();
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_invariant_chain() {
        // Z/2 x Z/3 x Z/4 = Z/2 x Z/12
        let g = FinAbGroup::from_factors(&[2, 3, 4]);
        assert_eq!(g.invariants(), &[2, 12]);
        // Z/6 x Z/4 = Z/2 x Z/12
        let h = FinAbGroup::from_factors(&[6, 4]);
        assert_eq!(g, h);
        for w in g.invariants().windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn aut_orders_match_spec_values() {
        assert_eq!(FinAbGroup::cyclic(3).aut_order(), BigUint::from(2u32));
        assert_eq!(
            FinAbGroup::from_factors(&[3, 3]).aut_order(),
            BigUint::from(48u32)
        );
        assert_eq!(
            FinAbGroup::from_factors(&[9, 3]).aut_order(),
            BigUint::from(108u32)
        );
    }

    /// Count automorphisms by enumerating all endomorphism matrices: entry
    /// (i, j) ranges over multiples of di/gcd(di, dj) mod di. A map is an
    /// automorphism iff its image generates the whole group.
    fn aut_order_brute(g: &FinAbGroup) -> u64 {
        let dims = g.invariants();
        let n = dims.len();
        if n == 0 {
            return 1;
        }
        let order = g.order() as u64;
        // candidate entry values per (i, j)
        let mut slots: Vec<(usize, usize, Vec<u64>)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let step = dims[i] / gcd_i64(dims[i] as i64, dims[j] as i64) as u64;
                let vals: Vec<u64> = (0..gcd_i64(dims[i] as i64, dims[j] as i64) as u64)
                    .map(|t| (t * step) % dims[i])
                    .collect();
                slots.push((i, j, vals));
            }
        }
        let mut count = 0u64;
        let mut mat = vec![0u64; n * n];
        fn rec(
            slots: &[(usize, usize, Vec<u64>)],
            idx: usize,
            mat: &mut Vec<u64>,
            n: usize,
            dims: &[u64],
            order: u64,
            count: &mut u64,
        ) {
            if idx == slots.len() {
                // image subgroup size by closure over generated elements
                let mut seen = std::collections::HashSet::new();
                seen.insert(vec![0u64; n]);
                let mut frontier = vec![vec![0u64; n]];
                let gens: Vec<Vec<u64>> = (0..n)
                    .map(|j| (0..n).map(|i| mat[i * n + j]).collect())
                    .collect();
                while let Some(v) = frontier.pop() {
                    for gen in &gens {
                        let w: Vec<u64> = v
                            .iter()
                            .zip(gen)
                            .zip(dims)
                            .map(|((a, b), d)| (a + b) % d)
                            .collect();
                        if seen.insert(w.clone()) {
                            frontier.push(w);
                        }
                    }
                }
                if seen.len() as u64 == order {
                    *count += 1;
                }
                return;
            }
            let (i, j, ref vals) = slots[idx];
            for &v in vals {
                mat[i * n + j] = v;
                rec(slots, idx + 1, mat, n, dims, order, count);
            }
        }
        rec(&slots, 0, &mut mat, n, dims, order, &mut count);
        count
    }

    #[test]
    fn aut_formula_matches_brute_force_up_to_81() {
        for g in groups_with_order_bound(&[2, 3, 5, 7], 81) {
            if g.order() > 81 {
                continue;
            }
            assert_eq!(
                g.aut_order(),
                BigUint::from(aut_order_brute(&g)),
                "group {g}"
            );
        }
    }

    #[test]
    fn hom_sizes() {
        assert_eq!(
            hom_size(&FinAbGroup::cyclic(9), &FinAbGroup::cyclic(3)),
            BigUint::from(3u32)
        );
        assert_eq!(
            hom_size(
                &FinAbGroup::from_factors(&[3, 3]),
                &FinAbGroup::from_factors(&[9, 3])
            ),
            BigUint::from(81u32)
        );
        assert_eq!(
            ext_size(&FinAbGroup::cyclic(3), &FinAbGroup::cyclic(3)),
            BigUint::from(3u32)
        );
    }

    /// #Hom by enumerating generator images directly.
    fn hom_size_brute(a: &FinAbGroup, b: &FinAbGroup) -> u64 {
        let mut count = 1u64;
        for &da in a.invariants() {
            // images of a generator of Z/da: elements of b killed by da
            count *= b.count_order_dividing(da) as u64;
        }
        count
    }

    #[test]
    fn hom_formula_matches_enumeration() {
        let groups = groups_with_order_bound(&[3, 5], 75);
        for a in &groups {
            for b in &groups {
                assert_eq!(hom_size(a, b), BigUint::from(hom_size_brute(a, b)));
            }
        }
    }

    #[test]
    fn c2_eigenpart_pairing() {
        let z3 = FinAbGroup::cyclic(3);
        let a = C2FinAbGroup::new(FinAbGroup::trivial(), z3.clone()).unwrap();
        assert_eq!(c2_hom_size(&a, &a), BigUint::from(3u32));
        let b = C2FinAbGroup::new(z3.clone(), FinAbGroup::trivial()).unwrap();
        assert_eq!(c2_hom_size(&b, &a), BigUint::one());
        let c = C2FinAbGroup::new(z3.clone(), z3.clone()).unwrap();
        let d = C2FinAbGroup::new(z3.clone(), FinAbGroup::cyclic(9)).unwrap();
        assert_eq!(c2_hom_size(&c, &d), BigUint::from(9u32));
        assert!(C2FinAbGroup::new(FinAbGroup::cyclic(2), z3).is_err());
    }

    #[test]
    fn group_enumeration_small() {
        // groups of 3-power order <= 27: 1, 3, 9, 3x3, 27, 3x9, 3x3x3
        let gs = groups_with_order_bound(&[3], 27);
        assert_eq!(gs.len(), 7);
    }
}
