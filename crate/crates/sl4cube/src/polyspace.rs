//! Homogeneous components P_N of C[x,y,z,w] with the sl4 action.
//!
//! Vectors are sparse maps from profiles to rationals, tagged with the basis
//! they are written in. Operators are rules on profiles; dense matrices are
//! built from the rules when rank or kernel computations need them.

use crate::exact::{binomial, factorial_int, frac, from_bigint, int, linalg, Rational};
use crate::sl4core::{GenKind, GeneratorId};
use crate::specialfn;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

pub mod checks;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Profile {
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub u: u32,
}

impl Profile {
    pub const fn new(r: u32, s: u32, t: u32, u: u32) -> Self {
        Profile { r, s, t, u }
    }

    pub fn from_exps(e: [u32; 4]) -> Self {
        Profile::new(e[0], e[1], e[2], e[3])
    }

    pub fn exps(&self) -> [u32; 4] {
        [self.r, self.s, self.t, self.u]
    }

    pub fn degree(&self) -> u32 {
        self.r + self.s + self.t + self.u
    }

    pub fn tail(&self) -> [u32; 3] {
        [self.s, self.t, self.u]
    }

    /// Completes a tail (s,t,u) to a degree-n profile.
    pub fn from_tail(n: u32, tail: [u32; 3]) -> Option<Self> {
        let used = tail.iter().sum::<u32>();
        (used <= n).then(|| Profile::new(n - used, tail[0], tail[1], tail[2]))
    }

    /// r!s!t!u!, the squared norm of the basis vector.
    pub fn weight(&self) -> Rational {
        from_bigint(self.exps().iter().map(|&e| factorial_int(e)).product())
    }

    /// Moves one unit of degree from variable `from` to variable `to`.
    pub fn shift(&self, from: usize, to: usize) -> Option<Profile> {
        let mut e = self.exps();
        if e[from] == 0 {
            return None;
        }
        e[from] -= 1;
        e[to] += 1;
        Some(Profile::from_exps(e))
    }

    /// Adds `delta` componentwise; None if a component goes negative.
    pub fn offset(&self, delta: [i64; 4]) -> Option<Profile> {
        let e = self.exps();
        let mut out = [0u32; 4];
        for k in 0..4 {
            let v = e[k] as i64 + delta[k];
            if v < 0 {
                return None;
            }
            out[k] = v as u32;
        }
        Some(Profile::from_exps(out))
    }

    pub fn weight_triple(&self) -> WeightTriple {
        let [r, s, t, u] = self.exps().map(|v| v as i64);
        WeightTriple {
            lambda: r + s - t - u,
            mu: r - s + t - u,
            nu: r - s - t + u,
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.r, self.s, self.t, self.u)
    }
}

/// All profiles of degree n in lexicographic order.
pub fn enumerate_profiles(n: u32) -> Vec<Profile> {
    let mut out = Vec::new();
    for r in 0..=n {
        for s in 0..=n - r {
            for t in 0..=n - r - s {
                out.push(Profile::new(r, s, t, n - r - s - t));
            }
        }
    }
    out
}

pub fn profile_index(n: u32) -> HashMap<Profile, usize> {
    enumerate_profiles(n)
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect()
}

pub fn dim_p(n: u32) -> usize {
    ((n as usize + 1) * (n as usize + 2) * (n as usize + 3)) / 6
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightTriple {
    pub lambda: i64,
    pub mu: i64,
    pub nu: i64,
}

impl WeightTriple {
    pub fn new(lambda: i64, mu: i64, nu: i64) -> Self {
        WeightTriple { lambda, mu, nu }
    }

    /// Membership in the set of weights of P_N.
    pub fn in_weight_set(&self, n: u32) -> bool {
        let n = n as i64;
        let ok_range = |v: i64| v.abs() <= n && (n - v) % 2 == 0;
        let (l, m, v) = (self.lambda, self.mu, self.nu);
        ok_range(l)
            && ok_range(m)
            && ok_range(v)
            && (n + l + m + v).rem_euclid(4) == 0
            && n + l + m + v >= 0
            && n + l - m - v >= 0
            && n - l + m - v >= 0
            && n - l - m + v >= 0
    }

    /// r = (N+λ+μ+ν)/4, s = (N+λ−μ−ν)/4, t = (N−λ+μ−ν)/4, u = (N−λ−μ+ν)/4.
    pub fn to_profile(&self, n: u32) -> Option<Profile> {
        if !self.in_weight_set(n) {
            return None;
        }
        let n = n as i64;
        let (l, m, v) = (self.lambda, self.mu, self.nu);
        let q = |x: i64| (x / 4) as u32;
        Some(Profile::new(
            q(n + l + m + v),
            q(n + l - m - v),
            q(n - l + m - v),
            q(n - l - m + v),
        ))
    }
}

impl fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.lambda, self.mu, self.nu)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisTag {
    Monomial,
    Starred,
}

impl BasisTag {
    pub fn other(self) -> Self {
        match self {
            BasisTag::Monomial => BasisTag::Starred,
            BasisTag::Starred => BasisTag::Monomial,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(u32),
    Mixed,
}

#[derive(Clone, PartialEq, Eq)]
pub struct PolyVec {
    tag: BasisTag,
    coeffs: BTreeMap<Profile, Rational>,
}

impl PolyVec {
    pub fn zero(tag: BasisTag) -> Self {
        PolyVec {
            tag,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(tag: BasisTag, p: Profile) -> Self {
        let mut v = Self::zero(tag);
        v.add_term(p, Rational::one());
        v
    }

    pub fn monomial(r: u32, s: u32, t: u32, u: u32) -> Self {
        Self::basis(BasisTag::Monomial, Profile::new(r, s, t, u))
    }

    pub fn starred(r: u32, s: u32, t: u32, u: u32) -> Self {
        Self::basis(BasisTag::Starred, Profile::new(r, s, t, u))
    }

    pub fn from_terms(tag: BasisTag, terms: impl IntoIterator<Item = (Profile, Rational)>) -> Self {
        let mut v = Self::zero(tag);
        for (p, c) in terms {
            v.add_term(p, c);
        }
        v
    }

    pub fn tag(&self) -> BasisTag {
        self.tag
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Profile, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, p: &Profile) -> Rational {
        self.coeffs.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, p: Profile, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> Degree {
        let mut it = self.coeffs.keys().map(Profile::degree);
        let Some(first) = it.next() else {
            return Degree::Zero;
        };
        if it.all(|d| d == first) {
            Degree::Homogeneous(first)
        } else {
            Degree::Mixed
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.tag);
        }
        PolyVec {
            tag: self.tag,
            coeffs: self.coeffs.iter().map(|(p, v)| (*p, v * c)).collect(),
        }
    }

    /// Same coefficients, other tag. This is σ on coordinates.
    pub fn retagged(&self, tag: BasisTag) -> Self {
        PolyVec {
            tag,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn to_dense(&self, n: u32) -> Vec<Rational> {
        enumerate_profiles(n)
            .iter()
            .map(|p| self.coeff(p))
            .collect()
    }

    pub fn from_dense(tag: BasisTag, n: u32, v: &[Rational]) -> Self {
        Self::from_terms(
            tag,
            enumerate_profiles(n).into_iter().zip(v.iter().cloned()),
        )
    }

    /// Applies a rule sending each basis vector to a list of terms.
    pub fn map_basis(
        &self,
        tag: BasisTag,
        rule: impl Fn(Profile, &mut Vec<(Profile, Rational)>),
    ) -> Self {
        let mut out = Self::zero(tag);
        let mut buf = Vec::new();
        for (p, c) in &self.coeffs {
            buf.clear();
            rule(*p, &mut buf);
            for (q, d) in buf.drain(..) {
                out.add_term(q, d * c);
            }
        }
        out
    }
}

impl fmt::Debug for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let star = if self.tag == BasisTag::Starred {
            "*"
        } else {
            ""
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(p, c)| format!("{}·{star}{p}", crate::exact::format_rational(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &PolyVec {
    type Output = PolyVec;
    fn add(self, o: &PolyVec) -> PolyVec {
        let o = convert_basis(o, self.tag);
        let mut out = self.clone();
        for (p, c) in o.coeffs {
            out.add_term(p, c);
        }
        out
    }
}

impl Sub for &PolyVec {
    type Output = PolyVec;
    fn sub(self, o: &PolyVec) -> PolyVec {
        self + &(-o)
    }
}

impl Neg for &PolyVec {
    type Output = PolyVec;
    fn neg(self) -> PolyVec {
        self.scale(&int(-1))
    }
}

/// Cartan signs: A*_k (resp. A_k on the starred basis) scales a monomial by
/// Σ_a sign[k][a]·e_a, giving r+s−t−u, r−s+t−u, r−s−t+u.
const CARTAN: [[i64; 4]; 3] = [[1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];

/// Row a of 2Υ: x* = (x+y+z+w)/2 and so on; the inverse substitution has the same rows.
const UPSILON2: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];

/// A_k exchanges variables in pairs: k=1 pairs x↔y, z↔w; k=2 x↔z, y↔w; k=3 x↔w, y↔z.
fn partner(k: u8, a: usize) -> usize {
    a ^ (k as usize)
}

fn cartan_eigenvalue(k: u8, p: Profile) -> i64 {
    let e = p.exps();
    (0..4)
        .map(|a| CARTAN[k as usize - 1][a] * e[a] as i64)
        .sum()
}

fn shift_rule(k: u8, p: Profile, out: &mut Vec<(Profile, Rational)>) {
    let e = p.exps();
    for a in 0..4 {
        if e[a] > 0 {
            out.push((p.shift(a, partner(k, a)).unwrap(), int(e[a] as i64)));
        }
    }
}

/// Generator action in the vector's own basis: four-term shift or diagonal.
pub fn act_generator(id: GeneratorId, v: &PolyVec) -> PolyVec {
    let shifts = matches!(
        (id.kind, v.tag),
        (GenKind::A, BasisTag::Monomial) | (GenKind::AStar, BasisTag::Starred)
    );
    let k = id.index;
    assert!((1..=3).contains(&k), "generator index must be 1..3");
    if shifts {
        v.map_basis(v.tag, |p, out| shift_rule(k, p, out))
    } else {
        v.map_basis(v.tag, |p, out| out.push((p, int(cartan_eigenvalue(k, p)))))
    }
}

/// Exact change of basis by expanding products of the linear substitutions.
pub fn convert_basis(v: &PolyVec, target: BasisTag) -> PolyVec {
    if v.tag == target {
        return v.clone();
    }
    let mut out = PolyVec::zero(target);
    for (p, c) in &v.coeffs {
        for (q, d) in expansion(*p).iter() {
            out.add_term(*q, d * c);
        }
    }
    out
}

type Expansion = Arc<Vec<(Profile, Rational)>>;

fn expansion_cache() -> &'static Mutex<HashMap<Profile, Expansion>> {
    static CACHE: OnceLock<Mutex<HashMap<Profile, Expansion>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coordinates of one basis monomial in the other basis.
fn expansion(p: Profile) -> Expansion {
    if let Some(e) = expansion_cache().lock().unwrap().get(&p) {
        return e.clone();
    }
    let result: Vec<(Profile, Rational)> = match p.exps().iter().position(|&e| e > 0) {
        None => vec![(p, Rational::one())],
        Some(a) => {
            let mut e = p.exps();
            e[a] -= 1;
            let prev = expansion(Profile::from_exps(e));
            let mut acc: BTreeMap<Profile, Rational> = BTreeMap::new();
            let half = frac(1, 2);
            for (q, c) in prev.iter() {
                for (b, &sign) in UPSILON2[a].iter().enumerate() {
                    let mut f = q.exps();
                    f[b] += 1;
                    let term = c * &half * int(sign);
                    *acc.entry(Profile::from_exps(f))
                        .or_insert_with(Rational::zero) += term;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        }
    };
    let result = Arc::new(result);
    expansion_cache().lock().unwrap().insert(p, result.clone());
    result
}

/// σ: swaps the basis tag, keeping coordinates.
pub fn sigma(v: &PolyVec) -> PolyVec {
    v.retagged(v.tag.other())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    /// 0..4 for x, y, z, w.
    pub index: usize,
    pub starred: bool,
}

impl Variable {
    pub const X: Variable = Variable {
        index: 0,
        starred: false,
    };
    pub const Y: Variable = Variable {
        index: 1,
        starred: false,
    };
    pub const Z: Variable = Variable {
        index: 2,
        starred: false,
    };
    pub const W: Variable = Variable {
        index: 3,
        starred: false,
    };
    pub const XS: Variable = Variable {
        index: 0,
        starred: true,
    };
    pub const YS: Variable = Variable {
        index: 1,
        starred: true,
    };
    pub const ZS: Variable = Variable {
        index: 2,
        starred: true,
    };
    pub const WS: Variable = Variable {
        index: 3,
        starred: true,
    };

    pub fn plain(index: usize) -> Self {
        Variable {
            index,
            starred: false,
        }
    }

    pub fn star(index: usize) -> Self {
        Variable {
            index,
            starred: true,
        }
    }

    fn native_to(&self, tag: BasisTag) -> bool {
        self.starred == (tag == BasisTag::Starred)
    }
}

fn derive_native(a: usize, v: &PolyVec) -> PolyVec {
    v.map_basis(v.tag, |p, out| {
        let e = p.exps();
        if e[a] > 0 {
            let mut f = e;
            f[a] -= 1;
            out.push((Profile::from_exps(f), int(e[a] as i64)));
        }
    })
}

fn multiply_native(a: usize, v: &PolyVec) -> PolyVec {
    v.map_basis(v.tag, |p, out| {
        let mut f = p.exps();
        f[a] += 1;
        out.push((Profile::from_exps(f), Rational::one()));
    })
}

/// Re-expresses a derivative or multiplier in the other family of variables:
/// D_{a*} = Σ_b Υ[a][b] D_b, and symmetrically.
fn through_upsilon(a: usize, v: &PolyVec, native: fn(usize, &PolyVec) -> PolyVec) -> PolyVec {
    let mut out = PolyVec::zero(v.tag);
    let half = frac(1, 2);
    for (b, &sign) in UPSILON2[a].iter().enumerate() {
        let part = native(b, v).scale(&(&half * int(sign)));
        out = &out + &part;
    }
    out
}

pub fn apply_d(var: Variable, v: &PolyVec) -> PolyVec {
    if var.native_to(v.tag) {
        derive_native(var.index, v)
    } else {
        through_upsilon(var.index, v, derive_native)
    }
}

pub fn apply_m(var: Variable, v: &PolyVec) -> PolyVec {
    if var.native_to(v.tag) {
        multiply_native(var.index, v)
    } else {
        through_upsilon(var.index, v, multiply_native)
    }
}

/// Index pairs: L_1 = D_xD_y − D_zD_w, L_2 = D_xD_z − D_wD_y, L_3 = D_xD_w − D_yD_z.
fn lr_pairs(i: u8) -> ((usize, usize), (usize, usize)) {
    match i {
        1 => ((0, 1), (2, 3)),
        2 => ((0, 2), (3, 1)),
        3 => ((0, 3), (1, 2)),
        _ => panic!("L/R index must be 1..3, got {i}"),
    }
}

/// L_i in the vector's own basis; the formula is the same in both.
pub fn apply_l(i: u8, v: &PolyVec) -> PolyVec {
    let ((a, b), (c, d)) = lr_pairs(i);
    let first = derive_native(a, &derive_native(b, v));
    let second = derive_native(c, &derive_native(d, v));
    &first - &second
}

pub fn apply_r(i: u8, v: &PolyVec) -> PolyVec {
    let ((a, b), (c, d)) = lr_pairs(i);
    let first = multiply_native(a, &multiply_native(b, v));
    let second = multiply_native(c, &multiply_native(d, v));
    &first - &second
}

pub fn apply_omega(v: &PolyVec) -> PolyVec {
    v.map_basis(v.tag, |p, out| out.push((p, int(p.degree() as i64))))
}

/// C_i = (Ω+2I)²/2 − L_iR_i − R_iL_i.
pub fn apply_c(i: u8, v: &PolyVec) -> PolyVec {
    let shifted = |w: &PolyVec| &apply_omega(w) + &w.scale(&int(2));
    let sq = shifted(&shifted(v)).scale(&frac(1, 2));
    let lr = apply_l(i, &apply_r(i, v));
    let rl = apply_r(i, &apply_l(i, v));
    &(&sq - &lr) - &rl
}

/// The closed-form C_i table: off-diagonal terms 2rs/2tu (C_1), 2rt/2su (C_2),
/// 2ru/2st (C_3) and diagonal N(N+2)/2 minus both.
pub fn apply_c_table(i: u8, v: &PolyVec) -> PolyVec {
    // (first pair, second pair) of variables whose product moves
    let ((a, b), (c, d)) = match i {
        1 => ((0, 1), (2, 3)),
        2 => ((0, 2), (1, 3)),
        3 => ((0, 3), (1, 2)),
        _ => panic!("Casimir index must be 1..3"),
    };
    v.map_basis(v.tag, |p, out| {
        let e = p.exps().map(|x| x as i64);
        let n = p.degree() as i64;
        let ab = 2 * e[a] * e[b];
        let cd = 2 * e[c] * e[d];
        out.push((p, frac(n * (n + 2), 2) - int(ab) - int(cd)));
        let mut delta = [0i64; 4];
        delta[a] = -1;
        delta[b] = -1;
        delta[c] = 1;
        delta[d] = 1;
        if let Some(q) = p.offset(delta) {
            out.push((q, int(ab)));
        }
        let neg = delta.map(|x| -x);
        if let Some(q) = p.offset(neg) {
            out.push((q, int(cd)));
        }
    })
}

/// The two generator expressions (4X² + 4Y² − [X,Y]²)/8 for C_i, with
/// (X,Y) = (A_{i+1}, A*_{i+2}) and (A*_{i+1}, A_{i+2}) cyclically.
pub fn apply_c_generators(i: u8, v: &PolyVec) -> [PolyVec; 2] {
    let j = i % 3 + 1;
    let k = j % 3 + 1;
    let form = |x: GeneratorId, y: GeneratorId| {
        let xx = act_generator(x, &act_generator(x, v));
        let yy = act_generator(y, &act_generator(y, v));
        let comm = |w: &PolyVec| {
            &act_generator(x, &act_generator(y, w)) - &act_generator(y, &act_generator(x, w))
        };
        let cc = comm(&comm(v));
        let total = &(&xx.scale(&int(4)) + &yy.scale(&int(4))) - &cc;
        total.scale(&frac(1, 8))
    };
    [
        form(GeneratorId::a(j), GeneratorId::astar(k)),
        form(GeneratorId::astar(j), GeneratorId::a(k)),
    ]
}

/// Bilinear form over Q making the monomial basis orthogonal with
/// ‖x^r y^s z^t w^u‖² = r!s!t!u!.
pub fn hermitian(v: &PolyVec, w: &PolyVec) -> Rational {
    let v = convert_basis(v, BasisTag::Monomial);
    let w = convert_basis(w, BasisTag::Monomial);
    let (small, large) = if v.len() <= w.len() {
        (&v, &w)
    } else {
        (&w, &v)
    };
    let mut acc = Rational::zero();
    for (p, c) in &small.coeffs {
        if let Some(d) = large.coeffs.get(p) {
            acc += c * d * p.weight();
        }
    }
    acc
}

pub fn norm_sq(v: &PolyVec) -> Rational {
    hermitian(v, v)
}

/// Column j is the image of the j-th degree-`n_in` basis vector, written in
/// degree `n_out` coordinates of the same tag.
pub fn matrix_of(
    n_in: u32,
    n_out: u32,
    tag: BasisTag,
    op: impl Fn(&PolyVec) -> PolyVec,
) -> Vec<Vec<Rational>> {
    let rows = enumerate_profiles(n_out);
    let cols = enumerate_profiles(n_in);
    let mut m = vec![vec![Rational::zero(); cols.len()]; rows.len()];
    let idx = profile_index(n_out);
    for (j, p) in cols.iter().enumerate() {
        let img = convert_basis(&op(&PolyVec::basis(tag, *p)), tag);
        for (q, c) in img.terms() {
            let i = *idx
                .get(q)
                .unwrap_or_else(|| panic!("image {q} not of degree {n_out}"));
            m[i][j] = c.clone();
        }
    }
    m
}

pub fn random_polyvec(rng: &mut impl Rng, n: u32, tag: BasisTag) -> PolyVec {
    PolyVec::from_terms(
        tag,
        enumerate_profiles(n).into_iter().filter_map(|p| {
            if rng.gen_bool(0.2) {
                None
            } else {
                Some((p, frac(rng.gen_range(-6..=6), rng.gen_range(1..=4))))
            }
        }),
    )
}

/// g(A) v for a polynomial g given by its coefficient list, by Horner.
pub fn apply_polynomial(coeffs: &[Rational], id: GeneratorId, v: &PolyVec) -> PolyVec {
    let mut acc = PolyVec::zero(v.tag);
    for c in coeffs.iter().rev() {
        acc = &act_generator(id, &acc) + &v.scale(c);
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificationError(pub String);

impl fmt::Display for CertificationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CertificationError {}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), CertificationError> {
    if ok {
        Ok(())
    } else {
        Err(CertificationError(msg()))
    }
}

/// The two generators whose Krawtchouk polynomials build Ker L_i.
pub fn kernel_generators(i: u8) -> (GeneratorId, GeneratorId) {
    match i {
        1 => (GeneratorId::a(2), GeneratorId::a(3)),
        2 => (GeneratorId::a(3), GeneratorId::a(1)),
        3 => (GeneratorId::a(1), GeneratorId::a(2)),
        _ => panic!("kernel index must be 1..3"),
    }
}

#[derive(Clone, Debug)]
pub struct KernelVector {
    pub j: u32,
    pub k: u32,
    pub vector: PolyVec,
}

/// v_{j,k} = f_j(g1) f_k(g2) x^N for 0 ≤ j,k ≤ N, certified to be an
/// orthogonal family inside Ker L_i with the expected norms.
pub fn kernel_l_basis(i: u8, n: u32) -> Result<Vec<KernelVector>, CertificationError> {
    kernel_l_basis_with(i, n, &specialfn::krawtchouk(n))
}

pub fn kernel_l_basis_with(
    i: u8,
    n: u32,
    fam: &specialfn::KrawtchoukFamily,
) -> Result<Vec<KernelVector>, CertificationError> {
    let (g1, g2) = kernel_generators(i);
    let xn = PolyVec::monomial(n, 0, 0, 0);
    let mut out = Vec::new();
    for j in 0..=n {
        let inner = apply_polynomial(fam.poly(j), g1, &xn);
        for k in 0..=n {
            let v = apply_polynomial(fam.poly(k), g2, &inner);
            out.push(KernelVector { j, k, vector: v });
        }
    }
    ensure(out.len() == ((n + 1) * (n + 1)) as usize, || {
        format!("kernel basis has {} vectors", out.len())
    })?;
    for kv in &out {
        ensure(apply_l(i, &kv.vector).is_zero(), || {
            format!("L_{i} v_{{{},{}}} != 0 at N={n}", kv.j, kv.k)
        })?;
        let expect = crate::exact::factorial(n)
            / (binomial(n as i64, kv.j as i64) * binomial(n as i64, kv.k as i64));
        let got = norm_sq(&kv.vector);
        ensure(got == expect, || {
            format!(
                "‖v_{{{},{}}}‖² = {got}, expected {expect} at N={n}",
                kv.j, kv.k
            )
        })?;
    }
    for (a, x) in out.iter().enumerate() {
        for y in &out[a + 1..] {
            let ip = hermitian(&x.vector, &y.vector);
            ensure(ip.is_zero(), || {
                format!(
                    "<v_{{{},{}}}, v_{{{},{}}}> = {ip} at N={n}",
                    x.j, x.k, y.j, y.k
                )
            })?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub ell: u32,
    pub basis: Vec<PolyVec>,
}

pub fn casimir_eigenvalue(n: u32, ell: u32) -> Rational {
    let m = n as i64 - 2 * ell as i64;
    frac(m * (m + 2), 2)
}

/// P_N = ⊕_ℓ R_i^ℓ (Ker L_i ∩ P_{N−2ℓ}), certified direct, orthogonal,
/// and with C_i acting as (N−2ℓ)(N−2ℓ+2)/2 on summand ℓ.
pub fn graded_decomposition(i: u8, n: u32) -> Result<Vec<Summand>, CertificationError> {
    let mut summands = Vec::new();
    for ell in 0..=n / 2 {
        let base = kernel_l_basis(i, n - 2 * ell)?;
        let basis: Vec<PolyVec> = base
            .into_iter()
            .map(|kv| (0..ell).fold(kv.vector, |acc, _| apply_r(i, &acc)))
            .collect();
        let expect_dim = ((n - 2 * ell + 1) * (n - 2 * ell + 1)) as usize;
        ensure(basis.len() == expect_dim, || {
            format!(
                "summand {ell} has {} vectors, expected {expect_dim}",
                basis.len()
            )
        })?;
        let lambda = casimir_eigenvalue(n, ell);
        for (idx, v) in basis.iter().enumerate() {
            let cv = apply_c(i, v);
            ensure(cv == v.scale(&lambda), || {
                format!("C_{i} eigenvalue fails on vector {idx} of summand {ell} at N={n}")
            })?;
        }
        summands.push(Summand { ell, basis });
    }
    let all: Vec<Vec<Rational>> = summands
        .iter()
        .flat_map(|s| s.basis.iter().map(|v| v.to_dense(n)))
        .collect();
    let r = linalg::rank(&all);
    ensure(r == dim_p(n), || {
        format!("summands span rank {r}, expected {}", dim_p(n))
    })?;
    for (a, sa) in summands.iter().enumerate() {
        for sb in &summands[a + 1..] {
            for (x, v) in sa.basis.iter().enumerate() {
                for (y, w) in sb.basis.iter().enumerate() {
                    let ip = hermitian(v, w);
                    ensure(ip.is_zero(), || {
                        format!(
                            "summands {} and {} not orthogonal: vectors {x},{y} give {ip} at N={n}",
                            sa.ell, sb.ell
                        )
                    })?;
                }
            }
        }
    }
    Ok(summands)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cartan {
    /// span{A_1, A_2, A_3}, diagonal on the starred basis.
    H,
    /// span{A*_1, A*_2, A*_3}, diagonal on the monomial basis.
    HStar,
}

/// Weight of each basis vector under the chosen Cartan subalgebra,
/// certified by applying the three generators and by inverting the map.
pub fn weight_decomposition(
    n: u32,
    which: Cartan,
) -> Result<BTreeMap<WeightTriple, Profile>, CertificationError> {
    let (tag, kind) = match which {
        Cartan::H => (BasisTag::Starred, GenKind::A),
        Cartan::HStar => (BasisTag::Monomial, GenKind::AStar),
    };
    let mut map = BTreeMap::new();
    for p in enumerate_profiles(n) {
        let w = p.weight_triple();
        let v = PolyVec::basis(tag, p);
        for (k, val) in [(1u8, w.lambda), (2, w.mu), (3, w.nu)] {
            let img = act_generator(GeneratorId { kind, index: k }, &v);
            ensure(img == v.scale(&int(val)), || {
                format!("basis vector {p} is not a weight vector for index {k}")
            })?;
        }
        ensure(w.in_weight_set(n), || {
            format!("weight {w} of {p} outside the weight set")
        })?;
        ensure(w.to_profile(n) == Some(p), || {
            format!("weight {w} does not invert to {p}")
        })?;
        ensure(map.insert(w, p).is_none(), || {
            format!("weight {w} repeated")
        })?;
    }
    let nn = n as i64;
    let mut count = 0;
    for l in -nn..=nn {
        for m in -nn..=nn {
            for v in -nn..=nn {
                let w = WeightTriple::new(l, m, v);
                if w.in_weight_set(n) {
                    count += 1;
                    ensure(map.contains_key(&w), || {
                        format!("weight {w} has no profile")
                    })?;
                }
            }
        }
    }
    ensure(count == map.len(), || {
        format!("{count} weights vs {} profiles", map.len())
    })?;
    Ok(map)
}

/// Dimension of each eigenspace of a generator on P_N, by exact kernels of
/// (M − λI) computed with fraction-free elimination.
pub fn eigenspace_dims(i: u8, kind: GenKind, n: u32) -> BTreeMap<i64, usize> {
    let id = GeneratorId { kind, index: i };
    let m = matrix_of(n, n, BasisTag::Monomial, |v| act_generator(id, v));
    let size = m.len();
    let mut out = BTreeMap::new();
    for k in 0..=n as i64 {
        let lambda = int(n as i64 - 2 * k);
        let shifted: Vec<Vec<Rational>> = m
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, x)| if r == c { x - &lambda } else { x.clone() })
                    .collect()
            })
            .collect();
        let dim = linalg::kernel(&shifted, size).len();
        if dim > 0 {
            out.insert(n as i64 - 2 * k, dim);
        }
    }
    out
}

/// A_1^s A_2^t A_3^u x^N over all tails, in lexicographic tail order.
pub fn a_words(n: u32, tag: BasisTag) -> Vec<PolyVec> {
    let kind = match tag {
        BasisTag::Monomial => GenKind::A,
        BasisTag::Starred => GenKind::AStar,
    };
    let start = PolyVec::basis(tag, Profile::new(n, 0, 0, 0));
    enumerate_profiles(n)
        .into_iter()
        .map(|p| {
            let mut v = start.clone();
            for (idx, e) in [(3u8, p.u), (2, p.t), (1, p.s)] {
                for _ in 0..e {
                    v = act_generator(GeneratorId { kind, index: idx }, &v);
                }
            }
            v
        })
        .collect()
}

/// Rank certificate for the words A_1^s A_2^t A_3^u x^N.
pub fn monomial_from_a_words(n: u32) -> Result<usize, CertificationError> {
    words_rank(n, BasisTag::Monomial)
}

pub fn starred_from_astar_words(n: u32) -> Result<usize, CertificationError> {
    words_rank(n, BasisTag::Starred)
}

fn words_rank(n: u32, tag: BasisTag) -> Result<usize, CertificationError> {
    let dense: Vec<Vec<Rational>> = a_words(n, tag).iter().map(|v| v.to_dense(n)).collect();
    let r = linalg::rank(&dense);
    ensure(r == dim_p(n), || {
        format!("word rank {r} < {} at N={n}", dim_p(n))
    })?;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn mono(r: u32, s: u32, t: u32, u: u32) -> PolyVec {
        PolyVec::monomial(r, s, t, u)
    }

    #[test]
    fn profile_enumeration() {
        assert_eq!(enumerate_profiles(0), vec![Profile::new(0, 0, 0, 0)]);
        assert_eq!(enumerate_profiles(1).len(), 4);
        assert_eq!(enumerate_profiles(3).len(), 20);
        for n in 0..8 {
            let ps = enumerate_profiles(n);
            assert_eq!(ps.len(), dim_p(n));
            assert!(ps.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn generator_examples() {
        let xy = mono(1, 1, 0, 0);
        assert_eq!(
            act_generator(GeneratorId::a(1), &xy),
            &mono(2, 0, 0, 0) + &mono(0, 2, 0, 0)
        );
        assert_eq!(
            act_generator(GeneratorId::astar(1), &mono(1, 1, 1, 0)),
            mono(1, 1, 1, 0)
        );
        let s = PolyVec::starred(1, 1, 1, 0);
        assert_eq!(act_generator(GeneratorId::a(1), &s), s);
    }

    #[test]
    fn conversion_examples() {
        let xs = PolyVec::starred(1, 0, 0, 0);
        let expect = PolyVec::from_terms(
            BasisTag::Monomial,
            enumerate_profiles(1).into_iter().map(|p| (p, frac(1, 2))),
        );
        assert_eq!(convert_basis(&xs, BasisTag::Monomial), expect);
        for n in 0..5u32 {
            let conv = convert_basis(&mono(n, 0, 0, 0), BasisTag::Starred);
            let scale = crate::exact::factorial(n) * crate::exact::pow2(-(n as i32));
            let expect = PolyVec::from_terms(
                BasisTag::Starred,
                enumerate_profiles(n)
                    .into_iter()
                    .map(|p| (p, &scale / p.weight())),
            );
            assert_eq!(conv, expect);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let v = random_polyvec(&mut rng, 3, BasisTag::Monomial);
        let back = convert_basis(&convert_basis(&v, BasisTag::Starred), BasisTag::Monomial);
        assert_eq!(back, v);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&mono(2, 0, 0, 0)), PolyVec::starred(2, 0, 0, 0));
        let r1 = &mono(1, 1, 0, 0) - &mono(0, 0, 1, 1);
        assert_eq!(sigma(&sigma(&r1)), r1);
        assert_eq!(convert_basis(&sigma(&r1), BasisTag::Monomial), r1);
    }

    #[test]
    fn d_and_m_examples() {
        assert_eq!(
            apply_d(Variable::X, &mono(3, 0, 0, 0)),
            mono(2, 0, 0, 0).scale(&int(3))
        );
        assert!(apply_d(Variable::X, &mono(0, 0, 0, 0)).is_zero());
        assert_eq!(
            apply_d(Variable::XS, &PolyVec::starred(1, 1, 0, 0)),
            PolyVec::starred(0, 1, 0, 0)
        );
        assert_eq!(apply_m(Variable::X, &mono(0, 0, 0, 0)), mono(1, 0, 0, 0));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let v = random_polyvec(&mut rng, 3, BasisTag::Monomial);
        for a in 0..4 {
            for b in 0..4 {
                let da = Variable::plain(a);
                let mb = Variable::plain(b);
                let comm = &apply_d(da, &apply_m(mb, &v)) - &apply_m(mb, &apply_d(da, &v));
                if a == b {
                    assert_eq!(comm, v);
                } else {
                    assert!(comm.is_zero());
                }
            }
        }
    }

    #[test]
    fn starred_derivative_matches_conversion() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let v = random_polyvec(&mut rng, 3, BasisTag::Monomial);
        let vs = convert_basis(&v, BasisTag::Starred);
        for a in 0..4 {
            for var in [Variable::plain(a), Variable::star(a)] {
                let direct = apply_d(var, &v);
                let via = convert_basis(&apply_d(var, &vs), BasisTag::Monomial);
                assert_eq!(direct, via);
                let direct = apply_m(var, &v);
                let via = convert_basis(&apply_m(var, &vs), BasisTag::Monomial);
                assert_eq!(direct, via);
            }
        }
    }

    #[test]
    fn l_r_omega_examples() {
        assert_eq!(apply_l(1, &mono(1, 1, 0, 0)), mono(0, 0, 0, 0));
        assert_eq!(
            apply_r(1, &mono(0, 0, 0, 0)),
            &mono(1, 1, 0, 0) - &mono(0, 0, 1, 1)
        );
        assert!(apply_l(1, &mono(2, 0, 0, 0)).is_zero());
        assert_eq!(
            apply_omega(&mono(2, 0, 1, 0)),
            mono(2, 0, 1, 0).scale(&int(3))
        );
        assert!(apply_omega(&mono(0, 0, 0, 0)).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let v = random_polyvec(&mut rng, 4, BasisTag::Monomial);
        for i in 1..=3 {
            let comm = &apply_l(i, &apply_r(i, &v)) - &apply_r(i, &apply_l(i, &v));
            assert_eq!(comm, &apply_omega(&v) + &v.scale(&int(2)));
        }
    }

    #[test]
    fn casimir_examples() {
        assert_eq!(
            apply_c(1, &mono(1, 0, 0, 0)),
            mono(1, 0, 0, 0).scale(&frac(3, 2))
        );
        let xy = mono(1, 1, 0, 0);
        let expect = &mono(0, 0, 1, 1).scale(&int(2)) + &xy.scale(&int(2));
        assert_eq!(apply_c(1, &xy), expect);
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let v = random_polyvec(&mut rng, 3, BasisTag::Monomial);
        for i in 1..=3 {
            let c = apply_c(i, &v);
            let [g1, g2] = apply_c_generators(i, &v);
            assert_eq!(c, g1);
            assert_eq!(c, g2);
            assert_eq!(c, apply_c_table(i, &v));
        }
    }

    #[test]
    fn hermitian_examples() {
        assert_eq!(norm_sq(&mono(2, 1, 0, 0)), int(2));
        assert!(hermitian(&mono(1, 0, 0, 0), &mono(0, 1, 0, 0)).is_zero());
        assert_eq!(norm_sq(&PolyVec::starred(1, 1, 0, 0)), int(1));
    }

    #[test]
    fn kernel_basis_examples() {
        let b = kernel_l_basis(1, 0).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].vector, mono(0, 0, 0, 0));
        let b = kernel_l_basis(1, 1).unwrap();
        let vs: Vec<&PolyVec> = b.iter().map(|kv| &kv.vector).collect();
        assert_eq!(
            vs,
            vec![
                &mono(1, 0, 0, 0),
                &mono(0, 0, 0, 1),
                &mono(0, 0, 1, 0),
                &mono(0, 1, 0, 0)
            ]
        );
        let b = kernel_l_basis(1, 2).unwrap();
        let v11 = b.iter().find(|kv| kv.j == 1 && kv.k == 1).unwrap();
        assert_eq!(norm_sq(&v11.vector), frac(1, 2));
    }

    #[test]
    fn graded_decomposition_examples() {
        let d = graded_decomposition(1, 2).unwrap();
        assert_eq!(
            d.iter().map(|s| s.basis.len()).collect::<Vec<_>>(),
            vec![9, 1]
        );
        let r1 = &mono(1, 1, 0, 0) - &mono(0, 0, 1, 1);
        assert_eq!(d[1].basis[0], r1);
        assert!(apply_c(1, &r1).is_zero());
        let d = graded_decomposition(1, 3).unwrap();
        assert_eq!(
            d.iter().map(|s| s.basis.len()).collect::<Vec<_>>(),
            vec![16, 4]
        );
    }

    #[test]
    fn weight_examples() {
        assert_eq!(
            Profile::new(1, 0, 0, 0).weight_triple(),
            WeightTriple::new(1, 1, 1)
        );
        assert_eq!(
            Profile::new(1, 1, 0, 0).weight_triple(),
            WeightTriple::new(2, 0, 0)
        );
        for n in 0..6 {
            assert_eq!(
                WeightTriple::new(n as i64, n as i64, n as i64).to_profile(n),
                Some(Profile::new(n, 0, 0, 0))
            );
            for which in [Cartan::H, Cartan::HStar] {
                assert_eq!(weight_decomposition(n, which).unwrap().len(), dim_p(n));
            }
        }
    }

    #[test]
    fn eigenspace_examples() {
        let d = eigenspace_dims(1, GenKind::AStar, 2);
        assert_eq!(d, BTreeMap::from([(-2, 3), (0, 4), (2, 3)]));
        assert_eq!(eigenspace_dims(1, GenKind::A, 0), BTreeMap::from([(0, 1)]));
        let d = eigenspace_dims(2, GenKind::A, 5);
        assert_eq!(d.values().sum::<usize>(), dim_p(5));
        for (k, n) in (0..=5).map(|k| (k, 5i64)) {
            assert_eq!(d[&(n - 2 * k)], ((k + 1) * (n - k + 1)) as usize);
        }
    }

    #[test]
    fn a_words_examples() {
        let w = a_words(1, BasisTag::Monomial);
        // tails in lexicographic order of (r,s,t,u): (0,0,0,1),(0,0,1,0),(0,1,0,0),(1,0,0,0)
        assert_eq!(
            w,
            vec![
                mono(0, 0, 0, 1),
                mono(0, 0, 1, 0),
                mono(0, 1, 0, 0),
                mono(1, 0, 0, 0)
            ]
        );
        assert_eq!(monomial_from_a_words(3).unwrap(), 20);
        assert_eq!(starred_from_astar_words(3).unwrap(), 20);
    }

    #[test]
    fn zero_vector_degenerate_cases() {
        let z = PolyVec::zero(BasisTag::Monomial);
        assert!(act_generator(GeneratorId::a(1), &z).is_zero());
        assert!(apply_l(2, &z).is_zero());
        assert_eq!(z.degree(), Degree::Zero);
        assert!(apply_l(1, &mono(1, 0, 0, 0)).is_zero());
    }
}
