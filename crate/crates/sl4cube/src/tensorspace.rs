//! V⊗V⊗V for the hypercube: triple profiles, the fixed space Fix(G) as an
//! abstract profile-indexed space and as concrete tensors, the vectors
//! B, B̃, B* = Q, B̃*, and the operators A^(k), A*^(k).
//!
//! Concrete tensors are the brute-force side and are only built for small N;
//! they are sparse maps keyed by x | y<<N | z<<2N.

use crate::cube::{distance, theta, Hypercube, TripleIndex, Vertex};
use crate::exact::{factorial, int, pow2, Rational};
use crate::polyspace::{convert_basis, dim_p, enumerate_profiles, BasisTag, PolyVec, Profile};
use crate::report::VerificationReport;
use crate::sl4core::{GenKind, GeneratorId};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Largest N for which full tensors are materialized (2^{3N} slots).
pub const TENSOR_N_LIMIT: u32 = 5;

pub fn pack(n: u32, x: Vertex, y: Vertex, z: Vertex) -> u64 {
    x as u64 | (y as u64) << n | (z as u64) << (2 * n)
}

pub fn unpack(n: u32, key: u64) -> (Vertex, Vertex, Vertex) {
    let mask = (1u64 << n) - 1;
    (
        (key & mask) as Vertex,
        (key >> n & mask) as Vertex,
        (key >> (2 * n) & mask) as Vertex,
    )
}

/// Counts the coordinates where x=y=z, x≠y=z, y≠z=x, z≠x=y.
pub fn profile_of(n: u32, x: Vertex, y: Vertex, z: Vertex) -> Profile {
    let mut e = [0u32; 4];
    for c in 0..n {
        let (a, b, d) = (x >> c & 1, y >> c & 1, z >> c & 1);
        let k = if a == b && b == d {
            0
        } else if b == d {
            1
        } else if d == a {
            2
        } else {
            3
        };
        e[k] += 1;
    }
    Profile::from_exps(e)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleTensor {
    pub n: u32,
    pub coeffs: BTreeMap<u64, Rational>,
}

impl TripleTensor {
    pub fn zero(n: u32) -> Self {
        TripleTensor {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, key: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = TripleTensor::zero(self.n);
        for (k, v) in &self.coeffs {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn add(&self, o: &TripleTensor) -> Self {
        let mut out = self.clone();
        for (k, v) in &o.coeffs {
            out.add_term(*k, v.clone());
        }
        out
    }

    pub fn inner(&self, o: &TripleTensor) -> Rational {
        let (a, b) = if self.coeffs.len() <= o.coeffs.len() {
            (self, o)
        } else {
            (o, self)
        };
        a.coeffs
            .iter()
            .filter_map(|(k, v)| b.coeffs.get(k).map(|w| v * w))
            .sum()
    }

    pub fn norm_sq(&self) -> Rational {
        self.inner(self)
    }

    fn map_keys(&self, f: impl Fn(Vertex) -> Vertex) -> Self {
        let mut out = TripleTensor::zero(self.n);
        for (k, v) in &self.coeffs {
            let (x, y, z) = unpack(self.n, *k);
            out.add_term(pack(self.n, f(x), f(y), f(z)), v.clone());
        }
        out
    }
}

/// Every triple, grouped by profile.
pub fn profile_classes(n: u32) -> BTreeMap<Profile, Vec<u64>> {
    assert!(
        n <= TENSOR_N_LIMIT,
        "tensor enumeration is capped at N={TENSOR_N_LIMIT}"
    );
    let mut out: BTreeMap<Profile, Vec<u64>> = BTreeMap::new();
    for key in 0..1u64 << (3 * n) {
        let (x, y, z) = unpack(n, key);
        out.entry(profile_of(n, x, y, z)).or_default().push(key);
    }
    out
}

/// B(p): the sum of all triples with profile p.
pub fn b_vector(n: u32, p: Profile) -> TripleTensor {
    assert_eq!(p.degree(), n);
    let mut out = TripleTensor::zero(n);
    for key in 0..1u64 << (3 * n) {
        let (x, y, z) = unpack(n, key);
        if profile_of(n, x, y, z) == p {
            out.coeffs.insert(key, Rational::one());
        }
    }
    out
}

/// Integer matrices K_h = 2^N E_h, read off the cube's idempotents.
fn scaled_idempotents(cube: &Hypercube) -> Vec<Vec<i64>> {
    let size = cube.size();
    let s = pow2(cube.n() as i32);
    (0..=cube.n())
        .map(|h| {
            let e = cube.primitive_idempotent(h);
            (0..size * size)
                .map(|pos| {
                    let q = e.get(pos / size, pos % size) * &s;
                    assert!(q.is_integer());
                    q.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect()
}

/// Q_{h,i,j} = 2^N Σ_x E_h x ⊗ E_i x ⊗ E_j x.
pub fn q_vector(cube: &Hypercube, t: TripleIndex) -> TripleTensor {
    q_vector_from(cube.n(), &scaled_idempotents(cube), t)
}

fn q_vector_from(n: u32, k: &[Vec<i64>], t: TripleIndex) -> TripleTensor {
    let size = 1usize << n;
    let (kh, ki, kj) = (&k[t.h as usize], &k[t.i as usize], &k[t.j as usize]);
    // Q = 2^{-2N} Σ_x K_h[a,x] K_i[b,x] K_j[c,x]
    let den = pow2(-2 * n as i32);
    let mut out = TripleTensor::zero(n);
    for a in 0..size {
        for b in 0..size {
            let mut col = vec![0i64; size];
            let mut any = false;
            for x in 0..size {
                let v = kh[a * size + x] * ki[b * size + x];
                col[x] = v;
                any |= v != 0;
            }
            if !any {
                continue;
            }
            for c in 0..size {
                let s: i64 = (0..size).map(|x| col[x] * kj[c * size + x]).sum();
                if s != 0 {
                    out.coeffs.insert(
                        pack(n, a as u32, b as u32, c as u32),
                        Rational::from_integer(s.into()) * &den,
                    );
                }
            }
        }
    }
    out
}

/// Which basis of Fix(G) a coordinate vector refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixBasis {
    B,
    BTilde,
    BStar,
    BStarTilde,
}

impl FixBasis {
    fn is_star(self) -> bool {
        matches!(self, FixBasis::BStar | FixBasis::BStarTilde)
    }

    fn is_tilde(self) -> bool {
        matches!(self, FixBasis::BTilde | FixBasis::BStarTilde)
    }
}

/// Element of Fix(G) by coordinates over one of its four profile-indexed bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixVec {
    pub n: u32,
    pub basis: FixBasis,
    pub coeffs: BTreeMap<Profile, Rational>,
}

/// r!s!t!u!/(N!2^N), the factor from B to B̃.
fn tilde_factor(n: u32, p: Profile) -> Rational {
    p.weight() / (factorial(n) * pow2(n as i32))
}

impl FixVec {
    pub fn zero(n: u32, basis: FixBasis) -> Self {
        FixVec {
            n,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(n: u32, basis: FixBasis, p: Profile) -> Self {
        let mut v = Self::zero(n, basis);
        v.add_term(p, Rational::one());
        v
    }

    pub fn add_term(&mut self, p: Profile, c: Rational) {
        assert_eq!(p.degree(), self.n, "profile degree must equal N");
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(p).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&p);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.n, self.basis);
        for (p, v) in &self.coeffs {
            out.add_term(*p, v * c);
        }
        out
    }

    /// Rewrites the coordinates in `target`. The tilde bases are rescalings;
    /// B̃ and B̃* are related as the monomial and starred bases of P_N are.
    pub fn to_basis(&self, target: FixBasis) -> FixVec {
        if self.basis == target {
            return self.clone();
        }
        let n = self.n;
        if self.basis.is_star() == target.is_star() {
            let mut out = Self::zero(n, target);
            for (p, c) in &self.coeffs {
                let f = tilde_factor(n, *p);
                out.add_term(*p, if self.basis.is_tilde() { c * f } else { c / f });
            }
            return out;
        }
        let here = if self.basis.is_star() {
            FixBasis::BStarTilde
        } else {
            FixBasis::BTilde
        };
        let there = if target.is_star() {
            FixBasis::BStarTilde
        } else {
            FixBasis::BTilde
        };
        let tilde = self.to_basis(here);
        let (from_tag, to_tag) = if here == FixBasis::BTilde {
            (BasisTag::Monomial, BasisTag::Starred)
        } else {
            (BasisTag::Starred, BasisTag::Monomial)
        };
        let poly = convert_basis(&PolyVec::from_terms(from_tag, tilde.coeffs.clone()), to_tag);
        let mut out = Self::zero(n, there);
        for (p, c) in poly.terms() {
            out.add_term(*p, c.clone());
        }
        out.to_basis(target)
    }

    /// The concrete tensor.
    pub fn lift(&self, cube: &Hypercube) -> TripleTensor {
        let n = self.n;
        assert_eq!(cube.n(), n);
        let k = if self.basis.is_star() {
            Some(scaled_idempotents(cube))
        } else {
            None
        };
        let mut out = TripleTensor::zero(n);
        for (p, c) in &self.coeffs {
            let c = if self.basis.is_tilde() {
                c * tilde_factor(n, *p)
            } else {
                c.clone()
            };
            let t = match &k {
                None => b_vector(n, *p),
                Some(k) => q_vector_from(n, k, TripleIndex::from_profile(*p)),
            };
            out = out.add(&t.scale(&c));
        }
        out
    }
}

/// ⟨u, v⟩ on Fix(G) through the dual pair B, B̃.
pub fn fix_inner(u: &FixVec, v: &FixVec) -> Rational {
    let a = u.to_basis(FixBasis::B);
    let b = v.to_basis(FixBasis::BTilde);
    a.coeffs
        .iter()
        .filter_map(|(p, c)| b.coeffs.get(p).map(|d| c * d))
        .sum()
}

/// Coordinates in B, if the tensor is constant on each profile class.
pub fn restrict(t: &TripleTensor, classes: &BTreeMap<Profile, Vec<u64>>) -> Option<FixVec> {
    let mut out = FixVec::zero(t.n, FixBasis::B);
    let mut seen = 0;
    for (p, keys) in classes {
        let c = t
            .coeffs
            .get(&keys[0])
            .cloned()
            .unwrap_or_else(Rational::zero);
        for k in keys {
            let d = t.coeffs.get(k);
            let same = match d {
                Some(d) => *d == c,
                None => c.is_zero(),
            };
            if !same {
                return None;
            }
        }
        if !c.is_zero() {
            seen += keys.len();
        }
        out.add_term(*p, c);
    }
    (seen == t.coeffs.len()).then_some(out)
}

fn cartan(k: u8, p: Profile) -> i64 {
    let [r, s, t, u] = p.exps().map(|x| x as i64);
    match k {
        1 => r + s - t - u,
        2 => r - s + t - u,
        3 => r - s - t + u,
        _ => panic!("operator index must be 1..3"),
    }
}

/// Term list of the four-term shift rule of A^(k) on B̃ (equally A*^(k) on B̃*).
fn shift_terms(k: u8, p: Profile) -> Vec<(Profile, i64)> {
    // For each of r,s,t,u, the slot it moves into.
    let targets: [usize; 4] = match k {
        1 => [1, 0, 3, 2],
        2 => [2, 3, 0, 1],
        3 => [3, 2, 1, 0],
        _ => panic!("operator index must be 1..3"),
    };
    let e = p.exps();
    (0..4)
        .filter(|&a| e[a] > 0)
        .map(|a| {
            let mut f = e;
            f[a] -= 1;
            f[targets[a]] += 1;
            (Profile::from_exps(f), e[a] as i64)
        })
        .collect()
}

/// A^(k) or A*^(k) on Fix(G) by the profile tables.
pub fn act_abstract(id: GeneratorId, v: &FixVec) -> FixVec {
    let native = match id.kind {
        GenKind::A => FixBasis::BTilde,
        GenKind::AStar => FixBasis::BStarTilde,
    };
    let diagonal_basis = match id.kind {
        GenKind::A => FixBasis::BStarTilde,
        GenKind::AStar => FixBasis::BTilde,
    };
    let work_in = if v.basis.is_star() == native.is_star() {
        native
    } else {
        diagonal_basis
    };
    let w = v.to_basis(work_in);
    let mut out = FixVec::zero(v.n, work_in);
    for (p, c) in &w.coeffs {
        if work_in == native {
            for (q, m) in shift_terms(id.index, *p) {
                out.add_term(q, c * int(m));
            }
        } else {
            out.add_term(*p, c * int(cartan(id.index, *p)));
        }
    }
    out.to_basis(v.basis)
}

/// A^(k) (adjacency in slot k) or A*^(k) (scaling by θ* of the distance
/// between the other two slots) on a concrete tensor.
pub fn act_concrete(id: GeneratorId, t: &TripleTensor) -> TripleTensor {
    let n = t.n;
    let slot = id.index as usize - 1;
    let mut out = TripleTensor::zero(n);
    for (key, c) in &t.coeffs {
        let (x, y, z) = unpack(n, *key);
        let mut v = [x, y, z];
        match id.kind {
            GenKind::A => {
                for b in 0..n {
                    v[slot] ^= 1 << b;
                    out.add_term(pack(n, v[0], v[1], v[2]), c.clone());
                    v[slot] ^= 1 << b;
                }
            }
            GenKind::AStar => {
                let d = distance(v[(slot + 1) % 3], v[(slot + 2) % 3]);
                out.add_term(*key, c * int(theta(n, d)));
            }
        }
    }
    out
}

/// An automorphism of H(N,2): permute coordinates, then flip the bits in `flip`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeAutomorphism {
    pub perm: Vec<u32>,
    pub flip: Vertex,
}

impl CubeAutomorphism {
    /// Coordinate c of the image is coordinate perm[c] of the input.
    pub fn apply(&self, x: Vertex) -> Vertex {
        let mut out = 0;
        for (c, &src) in self.perm.iter().enumerate() {
            out |= (x >> src & 1) << c;
        }
        out ^ self.flip
    }

    pub fn apply_tensor(&self, t: &TripleTensor) -> TripleTensor {
        t.map_keys(|x| self.apply(x))
    }
}

/// Adjacent transpositions and one sign flip; these generate G.
pub fn group_generators(n: u32) -> Vec<CubeAutomorphism> {
    let id: Vec<u32> = (0..n).collect();
    let mut out = Vec::new();
    for c in 0..n.saturating_sub(1) {
        let mut p = id.clone();
        p.swap(c as usize, c as usize + 1);
        out.push(CubeAutomorphism { perm: p, flip: 0 });
    }
    if n > 0 {
        out.push(CubeAutomorphism { perm: id, flip: 1 });
    }
    out
}

/// All N!·2^N automorphisms.
pub fn group_elements(n: u32) -> Vec<CubeAutomorphism> {
    fn perms(k: u32) -> Vec<Vec<u32>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let mut out = Vec::new();
    for p in perms(n) {
        for flip in 0..1u32 << n {
            out.push(CubeAutomorphism {
                perm: p.clone(),
                flip,
            });
        }
    }
    out
}

pub fn fix_membership(t: &TripleTensor) -> bool {
    group_generators(t.n)
        .iter()
        .all(|g| g.apply_tensor(t) == *t)
}

/// Orbits of G on triples; each compared with the profile classes.
pub fn orbits_match_profiles(n: u32) -> Result<(), String> {
    let group = group_elements(n);
    let classes = profile_classes(n);
    let mut done: BTreeSet<u64> = BTreeSet::new();
    for key in 0..1u64 << (3 * n) {
        if done.contains(&key) {
            continue;
        }
        let (x, y, z) = unpack(n, key);
        let orbit: BTreeSet<u64> = group
            .iter()
            .map(|g| pack(n, g.apply(x), g.apply(y), g.apply(z)))
            .collect();
        let p = profile_of(n, x, y, z);
        let class: BTreeSet<u64> = classes[&p].iter().copied().collect();
        if orbit != class {
            return Err(format!(
                "orbit of {:?} has {} triples, profile {p} has {}",
                (x, y, z),
                orbit.len(),
                class.len()
            ));
        }
        done.extend(orbit);
    }
    Ok(())
}

fn random_tensor(rng: &mut impl Rng, n: u32, terms: usize) -> TripleTensor {
    let mut t = TripleTensor::zero(n);
    for _ in 0..terms {
        let key = rng.gen_range(0..1u64 << (3 * n));
        t.add_term(key, int(rng.gen_range(-5..=5)));
    }
    t
}

/// Tensor-level checks of Fix(G) and its bases (N ≤ `TENSOR_N_LIMIT`) and,
/// when `oracle` holds, the action and orbit oracles.
pub fn check_fixed_space(n: u32, oracle: bool, rng: &mut impl Rng) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let nn = Some(n);
    let cube = Hypercube::new(n);
    let classes = profile_classes(n);
    let profiles = enumerate_profiles(n);
    let dim = dim_p(n);
    let total = factorial(n) * pow2(n as i32);

    let mut bad = None;
    for key in 0..1u64 << (3 * n) {
        let (x, y, z) = unpack(n, key);
        let p = profile_of(n, x, y, z);
        let t = TripleIndex::from_profile(p);
        if (distance(y, z), distance(z, x), distance(x, y)) != (t.h, t.i, t.j) {
            bad = Some(format!("triple {:?} profile {p}", (x, y, z)));
            break;
        }
    }
    rep.record(
        format!("tensor.profile_distances.N{n}"),
        "∂(y,z) = t+u, ∂(z,x) = u+s, ∂(x,y) = s+t",
        nn,
        bad.map_or(Ok(()), Err),
    );

    let bs: Vec<TripleTensor> = profiles.iter().map(|p| b_vector(n, *p)).collect();
    let k = scaled_idempotents(&cube);
    let mut bad = None;
    let mut qs = Vec::new();
    for h in 0..=n {
        for i in 0..=n {
            for j in 0..=n {
                let t = TripleIndex::new(h, i, j);
                let q = q_vector_from(n, &k, t);
                if q.is_zero() == t.is_admissible(n) {
                    bad = Some(format!(
                        "Q{t} zero={} admissible={}",
                        q.is_zero(),
                        t.is_admissible(n)
                    ));
                }
                if t.is_admissible(n) {
                    qs.push((t, q));
                }
            }
        }
    }
    rep.record(
        format!("tensor.q_support.N{n}"),
        "Q_{h,i,j} ≠ 0 iff (h,i,j) ∈ 𝒫''_N",
        nn,
        bad.map_or(Ok(()), Err),
    );
    let q_of = |p: &Profile| {
        let t = TripleIndex::from_profile(*p);
        &qs.iter().find(|(s, _)| *s == t).unwrap().1
    };

    let mut bad = None;
    for (p, b) in profiles.iter().zip(&bs) {
        let want = &total / p.weight();
        if int(b.coeffs.len() as i64) != want || b.norm_sq() != want || q_of(p).norm_sq() != want {
            bad = Some(format!(
                "profile {p}: |B| = {}, ‖B*‖² = {}",
                b.coeffs.len(),
                q_of(p).norm_sq()
            ));
        }
        if !fix_membership(b) || !fix_membership(q_of(p)) {
            bad = Some(format!("B or B* at {p} is not G-fixed"));
        }
    }
    rep.record(
        format!("tensor.norms.N{n}"),
        "‖B(p)‖² = ‖B*(p)‖² = N!2^N/(r!s!t!u!), both G-fixed",
        nn,
        bad.map_or(Ok(()), Err),
    );

    let mut bad = None;
    for (a, p) in profiles.iter().enumerate() {
        for (b, q) in profiles.iter().enumerate() {
            let bt = bs[b].scale(&tilde_factor(n, *q));
            let want = if a == b {
                Rational::one()
            } else {
                Rational::zero()
            };
            if bs[a].inner(&bt) != want {
                bad = Some(format!("<B{p}, B̃{q}> != δ"));
            }
            if a < b && !q_of(p).inner(q_of(q)).is_zero() {
                bad = Some(format!("<B*{p}, B*{q}> != 0"));
            }
        }
    }
    rep.record(
        format!("tensor.duality.N{n}"),
        "<B(p), B̃(p')> = δ, B* orthogonal",
        nn,
        bad.map_or(Ok(()), Err),
    );

    let restricted: Vec<Option<FixVec>> = profiles
        .iter()
        .map(|p| restrict(q_of(p), &classes))
        .collect();
    let star_span = crate::exact::linalg::SpanBasis::from_vectors(
        restricted
            .iter()
            .flatten()
            .map(|v| {
                profiles
                    .iter()
                    .map(|p| v.coeffs.get(p).cloned().unwrap_or_else(Rational::zero))
                    .collect()
            })
            .collect::<Vec<Vec<Rational>>>()
            .iter(),
    );
    let b_rank = crate::exact::linalg::rank(
        &bs.iter()
            .map(|b| {
                restrict(b, &classes).map_or(vec![], |v| {
                    profiles
                        .iter()
                        .map(|p| v.coeffs.get(p).cloned().unwrap_or_else(Rational::zero))
                        .collect()
                })
            })
            .collect::<Vec<_>>(),
    );
    rep.check(
        format!("tensor.fix_dim.N{n}"),
        "dim Fix(G) = C(N+3,3) via B and via B*",
        nn,
        restricted.iter().all(Option::is_some) && star_span.dim() == dim && b_rank == dim,
        || format!("B rank {b_rank}, B* rank {}", star_span.dim()),
    );

    let sum_q = profiles
        .iter()
        .fold(TripleTensor::zero(n), |acc, p| acc.add(q_of(p)));
    let sum_b = bs.iter().fold(TripleTensor::zero(n), |acc, b| acc.add(b));
    let top = Profile::new(n, 0, 0, 0);
    let s = pow2(-(n as i32));
    rep.check(
        format!("tensor.sum_identities.N{n}"),
        "B(N,0,0,0) = 2^{-N} Σ B*(p), B*(N,0,0,0) = 2^{-N} Σ B(p)",
        nn,
        sum_q.scale(&s) == b_vector(n, top) && sum_b.scale(&s) == *q_of(&top),
        || "sum identity fails".into(),
    );

    let mut bad = None;
    for p in &profiles {
        for basis in [FixBasis::BTilde, FixBasis::BStarTilde] {
            let v = FixVec::unit(n, basis, *p);
            let other = if basis == FixBasis::BTilde {
                FixBasis::BStar
            } else {
                FixBasis::B
            };
            if v.to_basis(other).lift(&cube) != v.lift(&cube) {
                bad = Some(format!("change of basis at {p} from {basis:?}"));
            }
        }
    }
    rep.record(
        format!("tensor.change_of_basis.N{n}"),
        "B̃ ↔ B̃* coordinates agree with the tensors",
        nn,
        bad.map_or(Ok(()), Err),
    );

    let ids: Vec<&str> = vec![
        "tensor.action_oracle",
        "tensor.orbits",
        "tensor.astar_commutes_g",
    ];
    if !oracle {
        for id in ids {
            rep.skip(
                format!("{id}.N{n}"),
                "brute-force oracle above oracle_n_max",
                nn,
            );
        }
        return rep;
    }

    let mut bad = None;
    'outer: for id in GeneratorId::all() {
        for p in &profiles {
            for basis in [FixBasis::BTilde, FixBasis::BStarTilde, FixBasis::B] {
                let v = FixVec::unit(n, basis, *p);
                let lhs = act_abstract(id, &v).lift(&cube);
                let rhs = act_concrete(id, &v.lift(&cube));
                if lhs != rhs {
                    bad = Some(format!("{id} on {basis:?}{p}"));
                    break 'outer;
                }
            }
        }
    }
    rep.record(
        format!("tensor.action_oracle.N{n}"),
        "profile tables for A^(k), A*^(k) on B̃ and B̃* agree with the tensor operators",
        nn,
        bad.map_or(Ok(()), Err),
    );

    rep.record(
        format!("tensor.orbits.N{n}"),
        "two triples share a G-orbit iff they share a profile",
        nn,
        orbits_match_profiles(n),
    );

    let mut bad = None;
    let group = group_elements(n);
    for _ in 0..4 {
        let t = random_tensor(rng, n, 12);
        let g = &group[rng.gen_range(0..group.len())];
        for k in 1..=3 {
            let id = GeneratorId::astar(k);
            if act_concrete(id, &g.apply_tensor(&t)) != g.apply_tensor(&act_concrete(id, &t)) {
                bad = Some(format!("A*^({k}) and {g:?}"));
            }
        }
    }
    rep.record(
        format!("tensor.astar_commutes_g.N{n}"),
        "A*^(k) g = g A*^(k) on V⊗V⊗V",
        nn,
        bad.map_or(Ok(()), Err),
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn profile_examples() {
        assert_eq!(profile_of(3, 5, 5, 5), Profile::new(3, 0, 0, 0));
        // x=(+,+), y=z=(+,−): coordinate 2 has x ≠ y = z
        assert_eq!(profile_of(2, 0, 2, 2), Profile::new(1, 1, 0, 0));
    }

    #[test]
    fn b_examples() {
        let b = b_vector(2, Profile::new(2, 0, 0, 0));
        assert_eq!(b.coeffs.len(), 4);
        assert!(b.coeffs.contains_key(&pack(2, 3, 3, 3)));
        assert_eq!(b_vector(1, Profile::new(0, 1, 0, 0)).coeffs.len(), 2);
    }

    #[test]
    fn q_examples() {
        let c = Hypercube::new(1);
        assert_eq!(q_vector(&c, TripleIndex::new(0, 0, 0)).norm_sq(), int(2));
        assert!(q_vector(&c, TripleIndex::new(1, 0, 0)).is_zero());
        assert!(fix_membership(&q_vector(
            &Hypercube::new(2),
            TripleIndex::new(1, 1, 0)
        )));
    }

    #[test]
    fn abstract_examples() {
        let v = FixVec::unit(1, FixBasis::BTilde, Profile::new(1, 0, 0, 0));
        assert_eq!(
            act_abstract(GeneratorId::a(1), &v),
            FixVec::unit(1, FixBasis::BTilde, Profile::new(0, 1, 0, 0))
        );
        let v = FixVec::unit(2, FixBasis::BTilde, Profile::new(1, 1, 0, 0));
        assert_eq!(act_abstract(GeneratorId::astar(1), &v), v.scale(&int(2)));
    }

    #[test]
    fn concrete_examples() {
        let mut t = TripleTensor::zero(1);
        t.add_term(pack(1, 0, 1, 1), int(1));
        let mut want = TripleTensor::zero(1);
        want.add_term(pack(1, 1, 1, 1), int(1));
        assert_eq!(act_concrete(GeneratorId::a(1), &t), want);
        assert_eq!(act_concrete(GeneratorId::astar(3), &t), t.scale(&int(-1)));
    }

    #[test]
    fn membership_examples() {
        let mut t = TripleTensor::zero(2);
        t.add_term(pack(2, 1, 0, 0), int(1));
        assert!(!fix_membership(&t));
        for p in enumerate_profiles(2) {
            assert!(fix_membership(&b_vector(2, p)));
        }
    }

    #[test]
    fn small_suites_pass() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 0..=2 {
            let rep = check_fixed_space(n, true, &mut rng);
            assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn group_sizes() {
        assert_eq!(group_elements(3).len(), 48);
        assert_eq!(group_generators(3).len(), 3);
    }
}
