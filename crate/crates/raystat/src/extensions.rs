//! Explicit extension classes of finite abelian groups and orbit counting
//! under automorphism actions.
//!
//! An extension of C = ⊕ Z/c_i by A is coded by the images a_i ∈ A/c_iA of
//! the relations c_i·x_i, i.e. B = ⟨A, x_i | c_i x_i = lift(a_i)⟩. Tuples of
//! such images enumerate Ext^1(C, A) exactly, and both automorphism actions
//! are integer-matrix computations on the tuple data.

use crate::abelian::{C2FinAbGroup, FinAbGroup};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtError {
    #[error("orbit enumeration size {0} exceeds the brute-force bound {1}")]
    BoundExceeded(u128, u128),
    #[error("matrix does not define an endomorphism of the group")]
    BadMatrix,
}

/// Default brute-force bound on #C * #A for orbit enumeration.
pub const ORBIT_BOUND: u128 = 6561; // 3^8

/// An endomorphism of ⊕ Z/dims\[i\] as a matrix: column l holds the image of
/// the l-th generator; entry (i, l) is the x_i-coefficient, stored mod dims\[i\].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrpMatrix {
    pub dims: Vec<u64>,
    pub m: Vec<Vec<u64>>, // m[i][l]
}

impl GrpMatrix {
    pub fn identity(dims: &[u64]) -> Self {
        let n = dims.len();
        let mut m = vec![vec![0u64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1 % dims[i].max(1);
        }
        GrpMatrix {
            dims: dims.to_vec(),
            m,
        }
    }

    /// Well-definedness: c_i | c_l * m[i][l] for all i, l.
    pub fn is_endomorphism(&self) -> bool {
        let n = self.dims.len();
        (0..n).all(|i| {
            (0..n).all(|l| (self.dims[l] as u128 * self.m[i][l] as u128) % self.dims[i] as u128 == 0)
        })
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        let n = self.dims.len();
        (0..n)
            .map(|i| {
                let mut acc: u128 = 0;
                for l in 0..n {
                    acc += self.m[i][l] as u128 * v[l] as u128;
                }
                (acc % self.dims[i] as u128) as u64
            })
            .collect()
    }

    /// Is this endomorphism bijective? Checked by spanning the image.
    pub fn is_automorphism(&self) -> bool {
        let order: u128 = self.dims.iter().map(|&d| d as u128).product();
        if order > 1 << 24 {
            // not needed at brute-force scale
            panic!("automorphism check beyond supported size");
        }
        let n = self.dims.len();
        let gens: Vec<Vec<u64>> = (0..n)
            .map(|l| (0..n).map(|i| self.m[i][l]).collect())
            .collect();
        subgroup_closure(&self.dims, &gens).len() as u128 == order
    }
}

/// All elements of the subgroup of ⊕ Z/dims generated by `gens`.
pub fn subgroup_closure(dims: &[u64], gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut seen = std::collections::HashSet::new();
    let zero = vec![0u64; dims.len()];
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vec<u64> = v
                .iter()
                .zip(g)
                .zip(dims)
                .map(|((a, b), d)| (a + b) % d)
                .collect();
            if seen.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    let mut out: Vec<Vec<u64>> = seen.into_iter().collect();
    out.sort();
    out
}

/// Generating set of Aut(⊕ Z/dims): unit scalings of each coordinate and the
/// divisibility-respecting transvections. Swaps of equal invariants are
/// products of these.
pub fn aut_generators(g: &FinAbGroup) -> Vec<GrpMatrix> {
    let dims = g.invariants();
    let n = dims.len();
    let mut gens = Vec::new();
    for i in 0..n {
        for u in unit_group_generators(dims[i]) {
            let mut m = GrpMatrix::identity(dims);
            m.m[i][i] = u % dims[i];
            gens.push(m);
        }
    }
    for i in 0..n {
        for l in 0..n {
            if i == l {
                continue;
            }
            // x_l ↦ x_l + t x_i with t minimal admissible
            let t = dims[i] / crate::arith::gcd_i64(dims[i] as i64, dims[l] as i64) as u64;
            let mut m = GrpMatrix::identity(dims);
            m.m[i][l] = t % dims[i];
            if m.m[i][l] == 0 && t != 0 {
                continue;
            }
            gens.push(m);
        }
    }
    gens.retain(|m| m.is_endomorphism());
    gens
}

/// Generators of (Z/n)^x.
fn unit_group_generators(n: u64) -> Vec<u64> {
    let mut gens = Vec::new();
    for (p, e) in crate::arith::factor(n) {
        let pe = p.pow(e);
        let others = n / pe;
        let lift = |r: u64| -> u64 {
            // CRT: r mod pe, 1 mod others
            if others == 1 {
                return r % n;
            }
            let (_, u, v) = crate::arith::ext_gcd_i64(pe as i64, others as i64);
            let x = (r as i128 * v as i128 * others as i128 + u as i128 * pe as i128)
                .rem_euclid(n as i128);
            x as u64
        };
        if p == 2 {
            if e >= 2 {
                gens.push(lift(pe - 1));
            }
            if e >= 3 {
                gens.push(lift(5 % pe));
            }
        } else {
            // find a primitive root mod p^e
            let phi = pe / p * (p - 1);
            let fac = crate::arith::factor(phi);
            let mut g = 2u64;
            loop {
                let ok = fac
                    .iter()
                    .all(|&(q, _)| crate::arith::pow_mod(g, phi / q, pe) != 1);
                if ok {
                    break;
                }
                g += 1;
            }
            gens.push(lift(g));
        }
    }
    if gens.is_empty() && n > 1 {
        gens.push(1);
    }
    gens
}

/// The set Ext^1(C, A) as explicit relation-image tuples.
pub struct ExtClasses {
    pub c: FinAbGroup,
    pub a: FinAbGroup,
    /// g[i][j] = gcd(c_i, a_j): the (i, j) tuple slot lives mod this.
    pub slot_mod: Vec<Vec<u64>>,
}

impl ExtClasses {
    pub fn new(c: &FinAbGroup, a: &FinAbGroup) -> Self {
        let slot_mod = c
            .invariants()
            .iter()
            .map(|&ci| {
                a.invariants()
                    .iter()
                    .map(|&aj| crate::arith::gcd_i64(ci as i64, aj as i64) as u64)
                    .collect()
            })
            .collect();
        ExtClasses {
            c: c.clone(),
            a: a.clone(),
            slot_mod,
        }
    }

    pub fn class_count(&self) -> u128 {
        self.slot_mod
            .iter()
            .flatten()
            .map(|&g| g as u128)
            .product()
    }

    /// Enumerate all classes in canonical form (each slot reduced).
    pub fn all_classes(&self) -> Vec<Vec<u64>> {
        let mods: Vec<u64> = self.slot_mod.iter().flatten().copied().collect();
        let total: u128 = mods.iter().map(|&g| g as u128).product();
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = vec![0u64; mods.len()];
        loop {
            out.push(cur.clone());
            let mut k = 0;
            loop {
                if k == mods.len() {
                    return out;
                }
                cur[k] += 1;
                if cur[k] < mods[k] {
                    break;
                }
                cur[k] = 0;
                k += 1;
            }
        }
    }

    fn canonicalize(&self, tuple: &mut [u64]) {
        let rc = self.c.rank();
        let ra = self.a.rank();
        for i in 0..rc {
            for j in 0..ra {
                let g = self.slot_mod[i][j];
                tuple[i * ra + j] = if g == 0 { 0 } else { tuple[i * ra + j] % g };
            }
        }
    }

    /// Pullback along an endomorphism of C: the (i -> k) transfer multiplies
    /// by c_k·M\[i\]\[k\]/c_i, which is integral exactly when M is well-defined.
    pub fn pullback(&self, tuple: &[u64], m: &GrpMatrix) -> Vec<u64> {
        let rc = self.c.rank();
        let ra = self.a.rank();
        let c = self.c.invariants();
        let a = self.a.invariants();
        let mut out = vec![0u64; rc * ra];
        for k in 0..rc {
            for i in 0..rc {
                let t = (c[k] as u128 * m.m[i][k] as u128) / c[i] as u128;
                if t == 0 {
                    continue;
                }
                for j in 0..ra {
                    let add = (t % a[j] as u128) * tuple[i * ra + j] as u128;
                    out[k * ra + j] = ((out[k * ra + j] as u128 + add) % a[j] as u128) as u64;
                }
            }
        }
        self.canonicalize(&mut out);
        out
    }

    /// Pushforward along an endomorphism of A applied to each relation image.
    pub fn pushforward(&self, tuple: &[u64], n: &GrpMatrix) -> Vec<u64> {
        let rc = self.c.rank();
        let ra = self.a.rank();
        let mut out = vec![0u64; rc * ra];
        for i in 0..rc {
            let v: Vec<u64> = (0..ra).map(|j| tuple[i * ra + j]).collect();
            let w = n.apply(&v);
            out[i * ra..(i + 1) * ra].copy_from_slice(&w);
        }
        self.canonicalize(&mut out);
        out
    }
}

/// A C2-equivariant extension class: matched eigenpart tuples.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct C2ExtClass {
    pub plus: Vec<u64>,
    pub minus: Vec<u64>,
}

/// A C2-equivariant endomorphism: block-diagonal over the eigenparts.
#[derive(Clone, Debug)]
pub struct C2Matrix {
    pub plus: GrpMatrix,
    pub minus: GrpMatrix,
}

impl C2Matrix {
    pub fn identity(g: &C2FinAbGroup) -> Self {
        C2Matrix {
            plus: GrpMatrix::identity(g.plus.invariants()),
            minus: GrpMatrix::identity(g.minus.invariants()),
        }
    }

    /// The inversion automorphism x -> -x.
    pub fn negation(g: &C2FinAbGroup) -> Self {
        let neg = |grp: &FinAbGroup| {
            let dims = grp.invariants();
            let mut m = GrpMatrix::identity(dims);
            for (i, &d) in dims.iter().enumerate() {
                m.m[i][i] = (d - 1) % d;
            }
            m
        };
        C2Matrix {
            plus: neg(&g.plus),
            minus: neg(&g.minus),
        }
    }
}

/// Generators of the full C2-equivariant automorphism group.
pub fn c2_aut_generators(g: &C2FinAbGroup) -> Vec<C2Matrix> {
    let mut out = Vec::new();
    for m in aut_generators(&g.plus) {
        out.push(C2Matrix {
            plus: m,
            minus: GrpMatrix::identity(g.minus.invariants()),
        });
    }
    for m in aut_generators(&g.minus) {
        out.push(C2Matrix {
            plus: GrpMatrix::identity(g.plus.invariants()),
            minus: m,
        });
    }
    out
}

/// Orbit sizes of (aut_a x Aut C) acting on Ext^1_{C2}(C, A), ascending.
/// `aut_a` is a generating set of the allowed automorphisms of A.
pub fn orbit_count(
    c: &C2FinAbGroup,
    a: &C2FinAbGroup,
    aut_a: &[C2Matrix],
    bound: u128,
) -> Result<Vec<u64>, ExtError> {
    let size = c.order() * a.order();
    if size > bound {
        return Err(ExtError::BoundExceeded(size, bound));
    }
    let ext_p = ExtClasses::new(&c.plus, &a.plus);
    let ext_m = ExtClasses::new(&c.minus, &a.minus);
    let aut_c = c2_aut_generators(c);

    let mut classes: Vec<C2ExtClass> = Vec::new();
    for p in ext_p.all_classes() {
        for m in ext_m.all_classes() {
            classes.push(C2ExtClass {
                plus: p.clone(),
                minus: m,
            });
        }
    }
    let index: std::collections::HashMap<C2ExtClass, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();

    let mut assigned = vec![false; classes.len()];
    let mut orbit_sizes = Vec::new();
    for start in 0..classes.len() {
        if assigned[start] {
            continue;
        }
        let mut orbit = vec![start];
        assigned[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let cur = classes[orbit[head]].clone();
            head += 1;
            let mut neighbors: Vec<C2ExtClass> = Vec::new();
            for phi in &aut_c {
                neighbors.push(C2ExtClass {
                    plus: ext_p.pullback(&cur.plus, &phi.plus),
                    minus: ext_m.pullback(&cur.minus, &phi.minus),
                });
            }
            for alpha in aut_a {
                neighbors.push(C2ExtClass {
                    plus: ext_p.pushforward(&cur.plus, &alpha.plus),
                    minus: ext_m.pushforward(&cur.minus, &alpha.minus),
                });
            }
            for nb in neighbors {
                let idx = *index.get(&nb).expect("action left the class set");
                if !assigned[idx] {
                    assigned[idx] = true;
                    orbit.push(idx);
                }
            }
        }
        orbit_sizes.push(orbit.len() as u64);
    }
    orbit_sizes.sort_unstable();
    Ok(orbit_sizes)
}
