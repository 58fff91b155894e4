//! Transition coefficients between the two bases of P_N, and Krawtchouk
//! polynomials.
//!
//! 𝒫 has two evaluators: the terminating six-fold hypergeometric sum, and a
//! brute-force expansion of (x+y+z+w)^R (x+y−z−w)^S (x−y+z−w)^T (x−y−z+w)^U.
//! The expansion is treated as ground truth.

use crate::exact::{factorial, factorial_int, frac, from_bigint, int, pochhammer, pow2, Rational};
use crate::polyspace::{
    act_generator, enumerate_profiles, BasisTag, PolyVec, Profile, WeightTriple,
};
use crate::report::VerificationReport;
use crate::sl4core::{GenKind, GeneratorId};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransitionKey {
    pub n: u32,
    /// (s,t,u), the λ-slots.
    pub tail: [u32; 3],
    /// (S,T,U), the μ-slots.
    pub star_tail: [u32; 3],
}

impl TransitionKey {
    pub fn new(n: u32, tail: [u32; 3], star_tail: [u32; 3]) -> Option<Self> {
        let ok = |t: &[u32; 3]| t.iter().sum::<u32>() <= n;
        (ok(&tail) && ok(&star_tail)).then_some(TransitionKey { n, tail, star_tail })
    }

    pub fn profile(&self) -> Profile {
        Profile::from_tail(self.n, self.tail).unwrap()
    }

    pub fn star_profile(&self) -> Profile {
        Profile::from_tail(self.n, self.star_tail).unwrap()
    }

    pub fn swapped(&self) -> Self {
        TransitionKey {
            n: self.n,
            tail: self.star_tail,
            star_tail: self.tail,
        }
    }

    /// Every key of degree n, in lexicographic (profile, star profile) order.
    pub fn all(n: u32) -> Vec<TransitionKey> {
        let ps = enumerate_profiles(n);
        let mut out = Vec::with_capacity(ps.len() * ps.len());
        for p in &ps {
            for q in &ps {
                out.push(TransitionKey {
                    n,
                    tail: p.tail(),
                    star_tail: q.tail(),
                });
            }
        }
        out
    }
}

/// Multi-index (a,b,c,d,e,f) of one summand of the hypergeometric form.
pub type TermIndex = [u32; 6];

/// Σ (−λ1)_{a+b}(−λ2)_{c+d}(−λ3)_{e+f}(−μ1)_{c+e}(−μ2)_{a+f}(−μ3)_{b+d}
///   / (−N)_{a+…+f} · 2^{a+…+f} / (a!b!c!d!e!f!), over a+…+f ≤ N.
///
/// `sign` may flip individual terms; the honest evaluator passes `|_| false`.
pub fn calp_sum_general(
    n: u32,
    lambda: &[Rational; 3],
    mu: &[Rational; 3],
    flip: impl Fn(&TermIndex) -> bool,
) -> Rational {
    let neg = |q: &Rational| -q;
    let (l1, l2, l3) = (neg(&lambda[0]), neg(&lambda[1]), neg(&lambda[2]));
    let (m1, m2, m3) = (neg(&mu[0]), neg(&mu[1]), neg(&mu[2]));
    let minus_n = int(-(n as i64));
    let facts: Vec<Rational> = (0..=n).map(factorial).collect();
    let mut total = Rational::zero();
    for a in 0..=n {
        for b in 0..=n - a {
            let pab = pochhammer(&l1, a + b);
            if pab.is_zero() {
                break;
            }
            for c in 0..=n - a - b {
                for d in 0..=n - a - b - c {
                    let pcd = pochhammer(&l2, c + d);
                    if pcd.is_zero() {
                        break;
                    }
                    let pbd = pochhammer(&m3, b + d);
                    if pbd.is_zero() {
                        break;
                    }
                    for e in 0..=n - a - b - c - d {
                        let pce = pochhammer(&m1, c + e);
                        if pce.is_zero() {
                            break;
                        }
                        for f in 0..=n - a - b - c - d - e {
                            let pef = pochhammer(&l3, e + f);
                            let paf = pochhammer(&m2, a + f);
                            if pef.is_zero() || paf.is_zero() {
                                break;
                            }
                            let k = a + b + c + d + e + f;
                            let denom = pochhammer(&minus_n, k)
                                * &facts[a as usize]
                                * &facts[b as usize]
                                * &facts[c as usize]
                                * &facts[d as usize]
                                * &facts[e as usize]
                                * &facts[f as usize];
                            let mut term =
                                &pab * &pcd * &pef * &pce * &paf * &pbd * pow2(k as i32) / denom;
                            if flip(&[a, b, c, d, e, f]) {
                                term = -term;
                            }
                            total += term;
                        }
                    }
                }
            }
        }
    }
    total
}

fn tail_rationals(t: [u32; 3]) -> [Rational; 3] {
    t.map(|x| int(x as i64))
}

pub fn calp_sum(key: &TransitionKey) -> Rational {
    calp_sum_general(
        key.n,
        &tail_rationals(key.tail),
        &tail_rationals(key.star_tail),
        |_| false,
    )
}

/// The sum with one term's sign flipped; a fixture for negative controls.
pub fn calp_sum_corrupted(key: &TransitionKey, flipped: TermIndex) -> Rational {
    calp_sum_general(
        key.n,
        &tail_rationals(key.tail),
        &tail_rationals(key.star_tail),
        |m| *m == flipped,
    )
}

/// Dense 4-variable polynomial with integer coefficients, keyed by exponents.
type IntPoly = HashMap<[u32; 4], BigInt>;

/// (±x ± y ± z ± w)^e by the multinomial theorem.
fn linear_power(signs: [i64; 4], e: u32) -> IntPoly {
    let mut out = IntPoly::new();
    let fe = factorial_int(e);
    for a in 0..=e {
        for b in 0..=e - a {
            for c in 0..=e - a - b {
                let d = e - a - b - c;
                let multinom = &fe
                    / (factorial_int(a) * factorial_int(b) * factorial_int(c) * factorial_int(d));
                let sign: i64 = [a, b, c, d]
                    .iter()
                    .zip(signs)
                    .map(|(&k, s)| if s < 0 && k % 2 == 1 { -1 } else { 1 })
                    .product();
                out.insert([a, b, c, d], multinom * sign);
            }
        }
    }
    out
}

fn poly_mul(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
            *out.entry(e).or_insert_with(BigInt::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// (x+y+z+w)^R (x+y−z−w)^S (x−y+z−w)^T (x−y−z+w)^U, fully expanded.
pub fn star_product_expansion(star: Profile) -> HashMap<[u32; 4], BigInt> {
    let factors = [
        linear_power([1, 1, 1, 1], star.r),
        linear_power([1, 1, -1, -1], star.s),
        linear_power([1, -1, 1, -1], star.t),
        linear_power([1, -1, -1, 1], star.u),
    ];
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| poly_mul(&acc, f))
}

/// 𝒫 = coefficient · r!s!t!u!/N!, from ⟨mono, star⟩ = (N!/2^N)·𝒫.
pub fn calp_from_expansion(expansion: &HashMap<[u32; 4], BigInt>, key: &TransitionKey) -> Rational {
    let p = key.profile();
    let coeff = expansion
        .get(&p.exps())
        .cloned()
        .unwrap_or_else(BigInt::zero);
    from_bigint(coeff) * p.weight() / factorial(key.n)
}

pub fn calp_genfunc(key: &TransitionKey) -> Rational {
    calp_from_expansion(&star_product_expansion(key.star_profile()), key)
}

/// 𝒫 for every key of degree n by the expansion route.
pub fn genfunc_table(n: u32) -> BTreeMap<TransitionKey, Rational> {
    let mut out = BTreeMap::new();
    for q in enumerate_profiles(n) {
        let exp = star_product_expansion(q);
        for p in enumerate_profiles(n) {
            let key = TransitionKey {
                n,
                tail: p.tail(),
                star_tail: q.tail(),
            };
            out.insert(key, calp_from_expansion(&exp, &key));
        }
    }
    out
}

/// μ-arguments of 𝒫 recovered from a weight triple.
fn vee_arguments(n: u32, w: WeightTriple) -> [Rational; 3] {
    let nn = n as i64;
    let (l, m, v) = (w.lambda, w.mu, w.nu);
    [
        frac(nn + l - m - v, 4),
        frac(nn - l + m - v, 4),
        frac(nn - l - m + v, 4),
    ]
}

/// 𝒫∨(s,t,u; λ,μ,ν) = 𝒫(s,t,u; (N+λ−μ−ν)/4, (N−λ+μ−ν)/4, (N−λ−μ+ν)/4).
pub fn calp_vee(n: u32, tail: [u32; 3], w: WeightTriple) -> Rational {
    calp_sum_general(n, &tail_rationals(tail), &vee_arguments(n, w), |_| false)
}

/// Evaluator signature shared by the orthogonality and recurrence checks,
/// so the hypergeometric sum can be swapped for a corrupted one.
pub type Evaluator<'a> = &'a (dyn Fn(&TransitionKey) -> Rational + Sync);

/// Σ_{RSTU} 𝒫(s,t,u;S,T,U)𝒫(s′,t′,u′;S,T,U)/(R!S!T!U!) = δ·4^N r!s!t!u!/(N!)².
pub fn check_orthogonality_with(n: u32, eval: Evaluator) -> VerificationReport {
    let ps = enumerate_profiles(n);
    let table: HashMap<(Profile, Profile), Rational> = ps
        .iter()
        .flat_map(|p| ps.iter().map(move |q| (*p, *q)))
        .map(|(p, q)| {
            let key = TransitionKey {
                n,
                tail: p.tail(),
                star_tail: q.tail(),
            };
            ((p, q), eval(&key))
        })
        .collect();
    let fact_sq = factorial(n) * factorial(n);
    let four_n = pow2(2 * n as i32);
    let mut rep = VerificationReport::new();
    for p in &ps {
        let mut bad = None;
        for p2 in &ps {
            let sum: Rational = ps
                .iter()
                .map(|q| &table[&(*p, *q)] * &table[&(*p2, *q)] / q.weight())
                .sum();
            let expect = if p == p2 {
                &four_n * p.weight() / &fact_sq
            } else {
                Rational::zero()
            };
            if sum != expect {
                bad = Some(format!("pair {p},{p2}: sum={sum} expected={expect}"));
                break;
            }
        }
        rep.record(
            format!("special.orthogonality.N{n}.{p}"),
            "Σ_RSTU 𝒫(s,t,u;S,T,U)𝒫(s',t',u';S,T,U)/(R!S!T!U!) = δ 4^N r!s!t!u!/(N!)²",
            Some(n),
            bad.map_or(Ok(()), Err),
        );
    }
    rep
}

pub fn check_orthogonality(n: u32) -> VerificationReport {
    check_orthogonality_with(n, &calp_sum)
}

/// One term of a recurrence: coefficient index into (r,s,t,u) and tail shift.
type RecTerm = (usize, [i64; 3]);

/// Eigenvalue rows (Cartan signs) and the four terms of each recurrence.
const RECURRENCES: [([i64; 4], [RecTerm; 4]); 3] = [
    (
        [1, 1, -1, -1],
        [
            (0, [1, 0, 0]),
            (1, [-1, 0, 0]),
            (2, [0, -1, 1]),
            (3, [0, 1, -1]),
        ],
    ),
    (
        [1, -1, 1, -1],
        [
            (0, [0, 1, 0]),
            (1, [-1, 0, 1]),
            (2, [0, -1, 0]),
            (3, [1, 0, -1]),
        ],
    ),
    (
        [1, -1, -1, 1],
        [
            (0, [0, 0, 1]),
            (1, [-1, 1, 0]),
            (2, [1, -1, 0]),
            (3, [0, 0, -1]),
        ],
    ),
];

fn shifted_tail(tail: [u32; 3], d: [i64; 3]) -> [i64; 3] {
    [
        tail[0] as i64 + d[0],
        tail[1] as i64 + d[1],
        tail[2] as i64 + d[2],
    ]
}

/// Three-term-style recurrences in the λ-slots, with 𝒫 as a polynomial so
/// shifted tails may leave the simplex; a term whose coefficient vanishes
/// is skipped before evaluation.
pub fn check_recurrences_with(
    n: u32,
    eval_general: &(dyn Fn(u32, [i64; 3], [u32; 3]) -> Rational + Sync),
) -> VerificationReport {
    let ps = enumerate_profiles(n);
    let mut rep = VerificationReport::new();
    for (idx, (signs, terms)) in RECURRENCES.iter().enumerate() {
        let mut bad = None;
        'outer: for p in &ps {
            let coeffs = p.exps();
            for q in &ps {
                let eig: i64 = signs.iter().zip(q.exps()).map(|(s, e)| s * e as i64).sum();
                let lhs = int(eig) * eval_general(n, p.tail().map(|x| x as i64), q.tail());
                let mut rhs = Rational::zero();
                for (ci, shift) in terms {
                    let c = coeffs[*ci];
                    if c == 0 {
                        continue;
                    }
                    rhs +=
                        int(c as i64) * eval_general(n, shifted_tail(p.tail(), *shift), q.tail());
                }
                if lhs != rhs {
                    bad = Some(format!("profiles {p},{q}: lhs={lhs} rhs={rhs}"));
                    break 'outer;
                }
            }
        }
        let roman = ["i", "ii", "iii"][idx];
        rep.record(
            format!("special.recurrence.{roman}.N{n}"),
            "eigenvalue·𝒫(s,t,u;S,T,U) = r𝒫(·) + s𝒫(·) + t𝒫(·) + u𝒫(·) with shifted tails",
            Some(n),
            bad.map_or(Ok(()), Err),
        );
    }
    rep
}

fn eval_shifted(n: u32, tail: [i64; 3], star_tail: [u32; 3]) -> Rational {
    calp_sum_general(n, &tail.map(int), &tail_rationals(star_tail), |_| false)
}

pub fn check_recurrences(n: u32) -> VerificationReport {
    check_recurrences_with(n, &eval_shifted)
}

/// The same recurrences for 𝒫∨ with the weight (λ,μ,ν) in place of the
/// eigenvalues.
pub fn check_vee_recurrences(n: u32) -> VerificationReport {
    let ps = enumerate_profiles(n);
    let mut rep = VerificationReport::new();
    for (idx, (_, terms)) in RECURRENCES.iter().enumerate() {
        let mut bad = None;
        'outer: for p in &ps {
            let coeffs = p.exps();
            for q in &ps {
                let w = q.weight_triple();
                let eig = [w.lambda, w.mu, w.nu][idx];
                let vee = |tail: [i64; 3]| {
                    calp_sum_general(n, &tail.map(int), &vee_arguments(n, w), |_| false)
                };
                let lhs = int(eig) * vee(p.tail().map(|x| x as i64));
                let mut rhs = Rational::zero();
                for (ci, shift) in terms {
                    let c = coeffs[*ci];
                    if c != 0 {
                        rhs += int(c as i64) * vee(shifted_tail(p.tail(), *shift));
                    }
                }
                if lhs != rhs {
                    bad = Some(format!("tail {p}, weight {w}: lhs={lhs} rhs={rhs}"));
                    break 'outer;
                }
            }
        }
        rep.record(
            format!("special.vee_recurrence.{}.N{n}", ["i", "ii", "iii"][idx]),
            "weight·𝒫∨(s,t,u;λ,μ,ν) = r𝒫∨(·) + s𝒫∨(·) + t𝒫∨(·) + u𝒫∨(·)",
            Some(n),
            bad.map_or(Ok(()), Err),
        );
    }
    rep
}

/// Polynomial in three commuting indeterminates.
pub type TriPoly = BTreeMap<[u32; 3], Rational>;

fn tri_mul(p: &TriPoly, q: &TriPoly) -> TriPoly {
    let mut out = TriPoly::new();
    for (e1, c1) in p {
        for (e2, c2) in q {
            let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
            *out.entry(e).or_insert_with(Rational::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn tri_linear(constant: Rational, coeffs: [Rational; 3]) -> TriPoly {
    let mut p = TriPoly::new();
    p.insert([0, 0, 0], constant);
    for (k, c) in coeffs.into_iter().enumerate() {
        let mut e = [0, 0, 0];
        e[k] = 1;
        p.insert(e, c);
    }
    p.retain(|_, c| !c.is_zero());
    p
}

/// (p)_k for a polynomial p.
fn tri_pochhammer(p: &TriPoly, k: u32) -> TriPoly {
    let mut acc = TriPoly::from([([0, 0, 0], Rational::one())]);
    for i in 0..k {
        let mut shifted = p.clone();
        *shifted.entry([0, 0, 0]).or_insert_with(Rational::zero) += int(i as i64);
        shifted.retain(|_, c| !c.is_zero());
        acc = tri_mul(&acc, &shifted);
    }
    acc
}

/// 𝒫∨(s,t,u; μ1,μ2,μ3) as a polynomial in the μ's.
pub fn calp_vee_polynomial(n: u32, tail: [u32; 3]) -> TriPoly {
    let q = frac(1, 4);
    let nq = frac(n as i64, 4);
    // −(N+μ1−μ2−μ3)/4 and the two companions
    let args = [
        tri_linear(-&nq, [-&q, q.clone(), q.clone()]),
        tri_linear(-&nq, [q.clone(), -&q, q.clone()]),
        tri_linear(-&nq, [q.clone(), q.clone(), -&q]),
    ];
    let poch: Vec<Vec<TriPoly>> = args
        .iter()
        .map(|a| (0..=n).map(|k| tri_pochhammer(a, k)).collect())
        .collect();
    let l = tail.map(|x| int(-(x as i64)));
    let minus_n = int(-(n as i64));
    let mut out = TriPoly::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                for d in 0..=n - a - b - c {
                    for e in 0..=n - a - b - c - d {
                        for f in 0..=n - a - b - c - d - e {
                            let k = a + b + c + d + e + f;
                            let scalar = pochhammer(&l[0], a + b)
                                * pochhammer(&l[1], c + d)
                                * pochhammer(&l[2], e + f);
                            if scalar.is_zero() {
                                continue;
                            }
                            let scalar = scalar * pow2(k as i32)
                                / (pochhammer(&minus_n, k)
                                    * [a, b, c, d, e, f]
                                        .iter()
                                        .map(|&x| factorial(x))
                                        .product::<Rational>());
                            let poly = tri_mul(
                                &tri_mul(&poch[0][(c + e) as usize], &poch[1][(a + f) as usize]),
                                &poch[2][(b + d) as usize],
                            );
                            for (ex, co) in poly {
                                *out.entry(ex).or_insert_with(Rational::zero) += co * &scalar;
                            }
                        }
                    }
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Σ c_{abc} X_1^a X_2^b X_3^c v, where X_k is A_k (monomial tag) or A*_k (starred tag).
pub fn apply_tri_polynomial(poly: &TriPoly, kind: GenKind, v: &PolyVec) -> PolyVec {
    let mut out = PolyVec::zero(v.tag());
    let mut cache: HashMap<[u32; 3], PolyVec> = HashMap::new();
    cache.insert([0, 0, 0], v.clone());
    for (e, c) in poly {
        let w = word(&mut cache, *e, kind);
        out = &out + &w.scale(c);
    }
    out
}

fn word(cache: &mut HashMap<[u32; 3], PolyVec>, e: [u32; 3], kind: GenKind) -> PolyVec {
    if let Some(w) = cache.get(&e) {
        return w.clone();
    }
    let k = e.iter().position(|&x| x > 0).unwrap();
    let mut prev = e;
    prev[k] -= 1;
    let inner = word(cache, prev, kind);
    let w = act_generator(
        GeneratorId {
            kind,
            index: k as u8 + 1,
        },
        &inner,
    );
    cache.insert(e, w.clone());
    w
}

/// 𝒫∨(s,t,u; A_1,A_2,A_3) x^N = x^r y^s z^t w^u and the starred twin.
pub fn check_vee_operator_identities(n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    for p in enumerate_profiles(n) {
        let poly = calp_vee_polynomial(n, p.tail());
        for (tag, kind, label) in [
            (BasisTag::Monomial, GenKind::A, "A"),
            (BasisTag::Starred, GenKind::AStar, "A*"),
        ] {
            let start = PolyVec::basis(tag, Profile::new(n, 0, 0, 0));
            let got = apply_tri_polynomial(&poly, kind, &start);
            let want = PolyVec::basis(tag, p);
            rep.check(
                format!("special.vee_operator.{label}.N{n}.{p}"),
                "𝒫∨(s,t,u; X_1,X_2,X_3) x^N = x^r y^s z^t w^u",
                Some(n),
                got == want,
                || format!("got {got}"),
            );
        }
    }
    rep
}

/// f_0..f_{N+1} as coefficient lists in η, lowest degree first.
#[derive(Clone, Debug, PartialEq)]
pub struct KrawtchoukFamily {
    pub n: u32,
    pub polys: Vec<Vec<Rational>>,
}

impl KrawtchoukFamily {
    pub fn poly(&self, k: u32) -> &[Rational] {
        &self.polys[k as usize]
    }

    /// Coefficientwise check of ηf_n = n f_{n−1} + (N−n) f_{n+1} for
    /// n ≤ N−1 and ηf_N = N f_{N−1} + f_{N+1}.
    pub fn recurrence_defect(&self) -> Option<String> {
        let n = self.n as usize;
        for k in 0..=n {
            let mut lhs = vec![Rational::zero(); self.polys[k].len() + 1];
            for (d, c) in self.polys[k].iter().enumerate() {
                lhs[d + 1] += c;
            }
            let up = if k < n { int((n - k) as i64) } else { int(1) };
            let mut rhs = poly_scale(&self.polys[k + 1], &up);
            if k > 0 {
                rhs = poly_add(&rhs, &poly_scale(&self.polys[k - 1], &int(k as i64)));
            }
            if trim(lhs.clone()) != trim(rhs.clone()) {
                return Some(format!("recurrence fails at n={k}"));
            }
        }
        None
    }

    pub fn degree_defect(&self) -> Option<String> {
        self.polys
            .iter()
            .enumerate()
            .find(|(k, p)| trim(p.to_vec()).len() != k + 1)
            .map(|(k, _)| format!("deg f_{k} != {k}"))
    }
}

fn poly_scale(p: &[Rational], c: &Rational) -> Vec<Rational> {
    p.iter().map(|x| x * c).collect()
}

fn poly_add(p: &[Rational], q: &[Rational]) -> Vec<Rational> {
    let len = p.len().max(q.len());
    (0..len)
        .map(|i| {
            p.get(i).cloned().unwrap_or_else(Rational::zero)
                + q.get(i).cloned().unwrap_or_else(Rational::zero)
        })
        .collect()
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// (η−N)(η−N+2)⋯(η+N)/N!.
pub fn krawtchouk_top_product(n: u32) -> Vec<Rational> {
    let mut acc = vec![Rational::one()];
    for k in 0..=n {
        let root = int(n as i64 - 2 * k as i64);
        let mut next = vec![Rational::zero(); acc.len() + 1];
        for (d, c) in acc.iter().enumerate() {
            next[d + 1] += c;
            next[d] -= c * &root;
        }
        acc = next;
    }
    poly_scale(&acc, &(Rational::one() / factorial(n)))
}

/// Builds f_0..f_{N+1} from the recurrence and certifies the product form of f_{N+1}.
pub fn krawtchouk(n: u32) -> KrawtchoukFamily {
    let nn = n as usize;
    let mut polys: Vec<Vec<Rational>> = vec![vec![Rational::one()]];
    for k in 0..=nn {
        let mut eta_fk = vec![Rational::zero(); polys[k].len() + 1];
        for (d, c) in polys[k].iter().enumerate() {
            eta_fk[d + 1] += c;
        }
        let lower = if k > 0 {
            poly_scale(&polys[k - 1], &int(k as i64))
        } else {
            vec![]
        };
        let diff = poly_add(&eta_fk, &poly_scale(&lower, &int(-1)));
        let next = if k < nn {
            poly_scale(&diff, &frac(1, (nn - k) as i64))
        } else {
            diff
        };
        polys.push(trim(next));
    }
    let fam = KrawtchoukFamily { n, polys };
    assert_eq!(
        trim(fam.polys[nn + 1].clone()),
        trim(krawtchouk_top_product(n)),
        "f_(N+1) disagrees with its product form at N={n}"
    );
    fam
}

/// f_n(gen) applied to x^N (A kinds) or x*^N (A* kinds).
pub fn krawtchouk_vector(n: u32, k: u32, id: GeneratorId) -> PolyVec {
    assert!(k <= n, "krawtchouk_vector needs k ≤ N");
    let tag = match id.kind {
        GenKind::A => BasisTag::Monomial,
        GenKind::AStar => BasisTag::Starred,
    };
    let fam = krawtchouk(n);
    crate::polyspace::apply_polynomial(
        fam.poly(k),
        id,
        &PolyVec::basis(tag, Profile::new(n, 0, 0, 0)),
    )
}

/// Family checks: degrees, recurrence, f_n(A_i)x^N = x^{N−n}·(partner)^n,
/// and f_{N+1}(A_i) = 0 on all of P_N.
pub fn check_krawtchouk_family(fam: &KrawtchoukFamily) -> VerificationReport {
    let n = fam.n;
    let mut rep = VerificationReport::new();
    rep.record(
        format!("special.krawtchouk.degree.N{n}"),
        "deg f_n = n for 0 ≤ n ≤ N+1",
        Some(n),
        fam.degree_defect().map_or(Ok(()), Err),
    );
    rep.record(
        format!("special.krawtchouk.recurrence.N{n}"),
        "η f_n = n f_{n-1} + (N-n) f_{n+1}",
        Some(n),
        fam.recurrence_defect().map_or(Ok(()), Err),
    );
    let top = trim(fam.polys[n as usize + 1].clone());
    rep.check(
        format!("special.krawtchouk.top.N{n}"),
        "f_{N+1}(η) = (η-N)(η-N+2)⋯(η+N)/N!",
        Some(n),
        top == trim(krawtchouk_top_product(n)),
        || "f_{N+1} differs from the product form".into(),
    );
    for id in GeneratorId::all() {
        let tag = match id.kind {
            GenKind::A => BasisTag::Monomial,
            GenKind::AStar => BasisTag::Starred,
        };
        let xn = PolyVec::basis(tag, Profile::new(n, 0, 0, 0));
        let target = (id.index as usize) % 4;
        let mut bad = None;
        for k in 0..=n {
            let got = crate::polyspace::apply_polynomial(fam.poly(k), id, &xn);
            let mut e = [n - k, 0, 0, 0];
            e[target] += k;
            let want = PolyVec::basis(tag, Profile::from_exps(e));
            if got != want {
                bad = Some(format!("f_{k}({id}) x^N = {got}"));
                break;
            }
        }
        rep.record(
            format!("special.krawtchouk.vector.{id}.N{n}"),
            "f_n(A_i) x^N = x^{N-n} v_i^n",
            Some(n),
            bad.map_or(Ok(()), Err),
        );
        let mut bad = None;
        for p in enumerate_profiles(n) {
            let img =
                crate::polyspace::apply_polynomial(fam.poly(n + 1), id, &PolyVec::basis(tag, p));
            if !img.is_zero() {
                bad = Some(format!("f_(N+1)({id}) on {p} gives {img}"));
                break;
            }
        }
        rep.record(
            format!("special.krawtchouk.annihilates.{id}.N{n}"),
            "f_{N+1}(A_i) = 0 on P_N",
            Some(n),
            bad.map_or(Ok(()), Err),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyspace::{convert_basis, hermitian};

    fn key(n: u32, t: [u32; 3], s: [u32; 3]) -> TransitionKey {
        TransitionKey::new(n, t, s).unwrap()
    }

    #[test]
    fn sum_examples() {
        assert_eq!(calp_sum(&key(1, [0, 0, 0], [0, 0, 0])), int(1));
        assert_eq!(calp_sum(&key(1, [1, 0, 0], [1, 0, 0])), int(1));
        assert_eq!(calp_sum(&key(1, [1, 0, 0], [0, 1, 0])), int(-1));
    }

    #[test]
    fn genfunc_examples() {
        for k in [
            key(1, [0, 0, 0], [0, 0, 0]),
            key(1, [1, 0, 0], [1, 0, 0]),
            key(1, [1, 0, 0], [0, 1, 0]),
        ] {
            assert_eq!(calp_genfunc(&k), calp_sum(&k));
        }
        let k = key(2, [0, 0, 0], [2, 0, 0]);
        let ip = hermitian(
            &PolyVec::monomial(2, 0, 0, 0),
            &PolyVec::starred(0, 2, 0, 0),
        );
        assert_eq!(calp_genfunc(&k), ip / (factorial(2) * pow2(-2)));
    }

    #[test]
    fn dual_evaluators_agree_small() {
        for n in 0..=3 {
            let table = genfunc_table(n);
            for (k, v) in &table {
                assert_eq!(&calp_sum(k), v, "{k:?}");
                assert_eq!(table[&k.swapped()], *v, "symmetry {k:?}");
            }
        }
    }

    #[test]
    fn transition_matches_basis_conversion() {
        for n in 0..=3u32 {
            for p in enumerate_profiles(n) {
                let conv = convert_basis(&PolyVec::basis(BasisTag::Monomial, p), BasisTag::Starred);
                for q in enumerate_profiles(n) {
                    let k = key(n, p.tail(), q.tail());
                    let want = factorial(n) * pow2(-(n as i32)) * calp_sum(&k) / q.weight();
                    assert_eq!(conv.coeff(&q), want);
                }
            }
        }
    }

    #[test]
    fn vee_examples() {
        assert_eq!(calp_vee(1, [0, 0, 0], WeightTriple::new(1, 1, 1)), int(1));
        let p = Profile::new(1, 1, 0, 0);
        let q = Profile::new(2, 0, 0, 0);
        assert_eq!(
            calp_vee(2, p.tail(), q.weight_triple()),
            calp_sum(&key(2, p.tail(), q.tail()))
        );
        assert!(check_vee_recurrences(2).all_passed());
    }

    #[test]
    fn orthogonality_and_recurrences() {
        for n in 0..=3 {
            assert!(check_orthogonality(n).all_passed());
            assert!(check_recurrences(n).all_passed());
        }
    }

    #[test]
    fn corrupted_term_is_caught() {
        let flipped: TermIndex = [1, 0, 0, 0, 0, 0];
        let eval = move |k: &TransitionKey| calp_sum_corrupted(k, flipped);
        let rep = check_orthogonality_with(2, &eval);
        assert!(!rep.all_passed());
    }

    #[test]
    fn vee_polynomial_identities() {
        for n in 0..=2 {
            let rep = check_vee_operator_identities(n);
            assert!(rep.all_passed(), "{:?}", rep.failures().next());
        }
        let poly = calp_vee_polynomial(2, [1, 0, 0]);
        let got = apply_tri_polynomial(&poly, GenKind::A, &PolyVec::monomial(2, 0, 0, 0));
        assert_eq!(got, PolyVec::monomial(1, 1, 0, 0));
    }

    #[test]
    fn krawtchouk_examples() {
        let f = krawtchouk(2);
        assert_eq!(trim(f.poly(1).to_vec()), vec![int(0), frac(1, 2)]);
        assert_eq!(trim(f.poly(2).to_vec()), vec![int(-1), int(0), frac(1, 2)]);
        assert_eq!(
            trim(f.poly(3).to_vec()),
            vec![int(0), int(-2), int(0), frac(1, 2)]
        );
        assert!(f.recurrence_defect().is_none());
        assert_eq!(
            krawtchouk_vector(1, 1, GeneratorId::a(1)),
            PolyVec::monomial(0, 1, 0, 0)
        );
        assert_eq!(
            krawtchouk_vector(2, 2, GeneratorId::a(2)),
            PolyVec::monomial(0, 0, 2, 0)
        );
        assert_eq!(
            krawtchouk_vector(3, 0, GeneratorId::a(3)),
            PolyVec::monomial(3, 0, 0, 0)
        );
        assert_eq!(
            krawtchouk_vector(2, 1, GeneratorId::astar(3)),
            PolyVec::starred(1, 0, 0, 1)
        );
    }

    #[test]
    fn krawtchouk_family_checks() {
        for n in 0..=4 {
            let rep = check_krawtchouk_family(&krawtchouk(n));
            assert!(rep.all_passed(), "{:?}", rep.failures().next());
        }
    }

    #[test]
    fn corrupted_krawtchouk_is_caught() {
        let mut f = krawtchouk(3);
        f.polys[2][0] += int(1);
        assert!(!check_krawtchouk_family(&f).all_passed());
    }
}
