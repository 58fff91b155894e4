//! The maps ‡: P_N → Fix(G), ε: Fix(G) → T and ϑ = ε∘‡: P_N → T.
//!
//! Each map carries an irrational global factor, (N!2^N)^{1/2}, 2^{N/2} and
//! (N!)^{1/2} respectively. We work with the rational rescalings ‡′, ε′, ϑ′
//! and record the square of the suppressed factor, so every form identity
//! below is the exact statement multiplied through by that square.

use crate::cube::{Hypercube, ModuleOp, QMatrix, TAlgebra, TBasisKind, TripleIndex, Vertex};
use crate::exact::linalg::SpanBasis;
use crate::exact::{factorial, pow2, Rational};
use crate::polyspace::{
    act_generator, apply_c, convert_basis, dim_p, enumerate_profiles, graded_decomposition,
    hermitian, sigma, BasisTag, Degree, PolyVec,
};
use crate::report::VerificationReport;
use crate::sl4core::{GenKind, GeneratorId};
use crate::tensorspace::{act_abstract, act_concrete, fix_inner, FixBasis, FixVec, TripleTensor};
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapName {
    Ddag,
    Eps,
    Theta,
}

/// A rescaled map together with the square of the factor it omits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledMap {
    pub name: MapName,
    pub scale_squared: Rational,
}

impl ScaledMap {
    pub fn new(name: MapName, n: u32) -> Self {
        let scale_squared = match name {
            MapName::Ddag => factorial(n) * pow2(n as i32),
            MapName::Eps => pow2(-(n as i32)),
            MapName::Theta => factorial(n),
        };
        ScaledMap {
            name,
            scale_squared,
        }
    }
}

fn require_degree(n: u32, v: &PolyVec) -> Result<(), String> {
    match v.degree() {
        Degree::Zero => Ok(()),
        Degree::Homogeneous(d) if d == n => Ok(()),
        d => Err(format!(
            "expected a homogeneous vector of degree {n}, got {d:?}"
        )),
    }
}

/// ‡′: x^r y^s z^t w^u ↦ r!s!t!u!·B(p) and x*^r… ↦ r!s!t!u!·B*(p).
pub fn ddag_scaled(n: u32, v: &PolyVec) -> Result<FixVec, String> {
    require_degree(n, v)?;
    let basis = match v.tag() {
        BasisTag::Monomial => FixBasis::B,
        BasisTag::Starred => FixBasis::BStar,
    };
    let mut out = FixVec::zero(n, basis);
    for (p, c) in v.terms() {
        out.add_term(*p, c * p.weight());
    }
    Ok(out)
}

/// ε′ on concrete tensors: x⊗y⊗z ↦ e_{y,z} if x = κ, else 0.
pub fn eps_scaled(t: &TripleTensor, kappa: Vertex) -> QMatrix {
    let n = t.n;
    let size = 1usize << n;
    let mut entries = vec![Rational::zero(); size * size];
    for (key, c) in &t.coeffs {
        let (x, y, z) = crate::tensorspace::unpack(n, *key);
        if x == kappa {
            entries[y as usize * size + z as usize] += c;
        }
    }
    QMatrix::from_entries(size, &entries)
}

/// ε′ on Fix(G) by the basis rules ε′(P_{h,i,j}) = E*_jA_hE*_i and
/// ε′(Q_{h,i,j}) = E_iA*_hE_j, with no tensors built.
pub fn eps_on_fix(t: &TAlgebra, v: &FixVec) -> QMatrix {
    let plain = match v.basis {
        FixBasis::B | FixBasis::BTilde => v.to_basis(FixBasis::B),
        FixBasis::BStar | FixBasis::BStarTilde => v.to_basis(FixBasis::BStar),
    };
    let size = t.a.size();
    let mut acc = QMatrix::zeros(size);
    for (p, c) in &plain.coeffs {
        let tr = TripleIndex::from_profile(*p);
        let b = match plain.basis {
            FixBasis::B => t
                .basis_element(TBasisKind::EstarAEstar, TripleIndex::new(tr.h, tr.j, tr.i))
                .unwrap(),
            _ => t.basis_element(TBasisKind::EAstarE, tr).unwrap(),
        };
        acc = acc.add(&b.scale(c));
    }
    acc
}

/// ϑ′: x^r y^s z^t w^u ↦ r!s!t!u!·E*_jA_hE*_i and x*^r… ↦ r!s!t!u!·E_iA*_hE_j,
/// with (h,i,j) = (t+u, u+s, s+t).
pub fn theta_scaled(t: &TAlgebra, v: &PolyVec) -> Result<QMatrix, String> {
    require_degree(t.n, v)?;
    let size = t.a.size();
    let mut acc = QMatrix::zeros(size);
    for (p, c) in v.terms() {
        let tr = TripleIndex::from_profile(*p);
        let b = match v.tag() {
            BasisTag::Monomial => t
                .basis_element(TBasisKind::EstarAEstar, TripleIndex::new(tr.h, tr.j, tr.i))
                .unwrap(),
            BasisTag::Starred => t.basis_element(TBasisKind::EAstarE, tr).unwrap(),
        };
        acc = acc.add(&b.scale(&(c * p.weight())));
    }
    Ok(acc)
}

fn module_op_of(id: GeneratorId) -> ModuleOp {
    match id.kind {
        GenKind::A => ModuleOp::A(id.index),
        GenKind::AStar => ModuleOp::AStar(id.index),
    }
}

fn basis_vectors(n: u32) -> Vec<PolyVec> {
    let mut out = Vec::new();
    for tag in [BasisTag::Monomial, BasisTag::Starred] {
        for p in enumerate_profiles(n) {
            out.push(PolyVec::basis(tag, p));
        }
    }
    out
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    test: impl Fn(&T) -> Option<String>,
) -> Result<(), String> {
    for it in items {
        if let Some(w) = test(&it) {
            return Err(w);
        }
    }
    Ok(())
}

/// ‡′ checks: intertwining (abstract everywhere, concrete when `cube` is
/// given), form scaling, injectivity and the starred rule.
pub fn check_ddag(n: u32, cube: Option<&Hypercube>) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let nn = Some(n);
    let scale = ScaledMap::new(MapName::Ddag, n).scale_squared;
    let vs = basis_vectors(n);

    rep.record(
        format!("corr.ddag.intertwine.N{n}"),
        "‡′(g f) = g^(k) ‡′(f) for all six generators",
        nn,
        first_failure(
            GeneratorId::all()
                .into_iter()
                .flat_map(|g| vs.iter().map(move |v| (g, v))),
            |(g, v)| {
                let lhs = ddag_scaled(n, &act_generator(*g, v)).unwrap();
                let rhs = act_abstract(*g, &ddag_scaled(n, v).unwrap());
                (lhs.to_basis(FixBasis::B) != rhs.to_basis(FixBasis::B))
                    .then(|| format!("{g} on {v}"))
            },
        ),
    );

    if let Some(cube) = cube {
        rep.record(
            format!("corr.ddag.intertwine_tensor.N{n}"),
            "‡′(g f) = g^(k) ‡′(f) with g^(k) acting on tensors",
            nn,
            first_failure(
                GeneratorId::all()
                    .into_iter()
                    .flat_map(|g| vs.iter().map(move |v| (g, v))),
                |(g, v)| {
                    let lhs = ddag_scaled(n, &act_generator(*g, v)).unwrap().lift(cube);
                    let rhs = act_concrete(*g, &ddag_scaled(n, v).unwrap().lift(cube));
                    (lhs != rhs).then(|| format!("{g} on {v}"))
                },
            ),
        );
        rep.record(
            format!("corr.ddag.starred_rule_tensor.N{n}"),
            "‡′(x*^r y*^s z*^t w*^u) = r!s!t!u! Q_{h,i,j} as tensors",
            nn,
            first_failure(enumerate_profiles(n), |p| {
                let via_mono = ddag_scaled(
                    n,
                    &convert_basis(&PolyVec::basis(BasisTag::Starred, *p), BasisTag::Monomial),
                )
                .unwrap()
                .lift(cube);
                let q = crate::tensorspace::q_vector(cube, TripleIndex::from_profile(*p))
                    .scale(&p.weight());
                (via_mono != q).then(|| format!("profile {p}"))
            }),
        );
    } else {
        rep.skip(
            format!("corr.ddag.intertwine_tensor.N{n}"),
            "tensor oracle above oracle_n_max",
            nn,
        );
        rep.skip(
            format!("corr.ddag.starred_rule_tensor.N{n}"),
            "tensor oracle above oracle_n_max",
            nn,
        );
    }

    rep.record(
        format!("corr.ddag.starred_rule.N{n}"),
        "‡′ of a starred monomial, computed through the monomial basis, is r!s!t!u! B*(p)",
        nn,
        first_failure(enumerate_profiles(n), |p| {
            let via_mono = ddag_scaled(
                n,
                &convert_basis(&PolyVec::basis(BasisTag::Starred, *p), BasisTag::Monomial),
            )
            .unwrap();
            let direct = ddag_scaled(n, &PolyVec::basis(BasisTag::Starred, *p)).unwrap();
            (via_mono.to_basis(FixBasis::BStar) != direct).then(|| format!("profile {p}"))
        }),
    );

    rep.record(
        format!("corr.ddag.form.N{n}"),
        "<‡′f, ‡′g> = N!2^N <f,g>",
        nn,
        first_failure(
            vs.iter()
                .enumerate()
                .flat_map(|(a, f)| vs[a..].iter().map(move |g| (f, g))),
            |(f, g)| {
                let lhs = fix_inner(&ddag_scaled(n, f).unwrap(), &ddag_scaled(n, g).unwrap());
                (lhs != &scale * hermitian(f, g)).then(|| format!("<{f}, {g}>"))
            },
        ),
    );
    rep
}

/// ε′ checks on Fix(G): bijection onto T, form scaling, intertwining, and
/// agreement of the tensor route with the basis rules when `cube` is given.
pub fn check_eps(t: &TAlgebra, cube: Option<&Hypercube>) -> VerificationReport {
    let n = t.n;
    let nn = Some(n);
    let mut rep = VerificationReport::new();
    let scale = ScaledMap::new(MapName::Eps, n).scale_squared;
    let profiles = enumerate_profiles(n);
    let fix_basis: Vec<FixVec> = [FixBasis::B, FixBasis::BStar]
        .into_iter()
        .flat_map(|b| profiles.iter().map(move |p| FixVec::unit(n, b, *p)))
        .collect();
    let images: Vec<QMatrix> = fix_basis.iter().map(|v| eps_on_fix(t, v)).collect();

    let mut span = SpanBasis::new();
    let mut outside = None;
    for (v, m) in fix_basis.iter().zip(&images) {
        match t.star_coordinates(m) {
            Some(c) => {
                span.insert(&c);
            }
            None => outside = Some(format!("ε′ of {v:?} leaves T")),
        }
    }
    rep.record(
        format!("corr.eps.bijection.N{n}"),
        "ε′ maps Fix(G) onto T, rank C(N+3,3)",
        nn,
        match outside {
            Some(w) => Err(w),
            None if span.dim() == dim_p(n) => Ok(()),
            None => Err(format!("rank {}", span.dim())),
        },
    );

    let pairs = fix_basis.len();
    let mut bad = None;
    'outer: for a in 0..pairs {
        for b in a..pairs {
            let lhs = images[a].inner(&images[b]);
            let rhs = &scale * fix_inner(&fix_basis[a], &fix_basis[b]);
            if lhs != rhs {
                bad = Some(format!(
                    "{:?} vs {:?}: {lhs} != {rhs}",
                    fix_basis[a], fix_basis[b]
                ));
                break 'outer;
            }
        }
    }
    rep.record(
        format!("corr.eps.form.N{n}"),
        "<ε′u, ε′v> = 2^{-N} <u,v> on Fix(G)",
        nn,
        bad.map_or(Ok(()), Err),
    );

    rep.record(
        format!("corr.eps.intertwine.N{n}"),
        "ε′ A^(k) = 𝒜^(k) ε′ and ε′ A*^(k) = 𝒜*^(k) ε′",
        nn,
        first_failure(
            GeneratorId::all()
                .into_iter()
                .flat_map(|g| fix_basis.iter().zip(&images).map(move |(v, m)| (g, v, m))),
            |(g, v, m)| {
                let lhs = eps_on_fix(t, &act_abstract(*g, v));
                let rhs = t.module_op(module_op_of(*g), m);
                (rhs.as_ref() != Some(&lhs)).then(|| format!("{g} on {v:?}"))
            },
        ),
    );

    if let Some(cube) = cube {
        rep.record(
            format!("corr.eps.routes_agree.N{n}"),
            "ε′ through tensors equals the basis rules ε′(P) = E*AE*, ε′(Q) = EA*E",
            nn,
            first_failure(fix_basis.iter().zip(&images), |(v, m)| {
                (eps_scaled(&v.lift(cube), t.kappa) != **m).then(|| format!("{v:?}"))
            }),
        );
    } else {
        rep.skip(
            format!("corr.eps.routes_agree.N{n}"),
            "tensor oracle above oracle_n_max",
            nn,
        );
    }
    rep
}

/// ϑ′ checks: basis rules against ε′∘‡′, intertwining, form, σ/S, C_1 ↔ φ,
/// and the Wedderburn correspondence.
pub fn check_theta(t: &TAlgebra) -> VerificationReport {
    let n = t.n;
    let nn = Some(n);
    let mut rep = VerificationReport::new();
    let scale = ScaledMap::new(MapName::Theta, n).scale_squared;
    let vs = basis_vectors(n);
    let images: Vec<QMatrix> = vs.iter().map(|v| theta_scaled(t, v).unwrap()).collect();

    rep.record(
        format!("corr.theta.composite.N{n}"),
        "ϑ′ = ε′ ∘ ‡′ on both bases of P_N, scale² N!2^N · 2^{-N} = N!",
        nn,
        first_failure(vs.iter().zip(&images), |(v, m)| {
            let via = eps_on_fix(t, &ddag_scaled(n, v).unwrap());
            (via != **m).then(|| format!("{v}"))
        }),
    );

    rep.record(
        format!("corr.theta.starred_rule.N{n}"),
        "ϑ′ of a starred monomial expanded in monomials is r!s!t!u! E_iA*_hE_j",
        nn,
        first_failure(enumerate_profiles(n), |p| {
            let star = PolyVec::basis(BasisTag::Starred, *p);
            let mono = convert_basis(&star, BasisTag::Monomial);
            (theta_scaled(t, &mono).unwrap() != theta_scaled(t, &star).unwrap())
                .then(|| format!("{p}"))
        }),
    );

    rep.record(
        format!("corr.theta.intertwine.N{n}"),
        "ϑ′ A_k = 𝒜^(k) ϑ′ and ϑ′ A*_k = 𝒜*^(k) ϑ′",
        nn,
        first_failure(
            GeneratorId::all()
                .into_iter()
                .flat_map(|g| vs.iter().zip(&images).map(move |(v, m)| (g, v, m))),
            |(g, v, m)| {
                let lhs = theta_scaled(t, &act_generator(*g, v)).unwrap();
                (t.module_op(module_op_of(*g), m).as_ref() != Some(&lhs))
                    .then(|| format!("{g} on {v}"))
            },
        ),
    );

    let mut span = SpanBasis::new();
    for m in &images[..dim_p(n)] {
        if let Some(c) = t.star_coordinates(m) {
            span.insert(&c);
        }
    }
    rep.check(
        format!("corr.theta.injective.N{n}"),
        "ϑ′ has rank C(N+3,3)",
        nn,
        span.dim() == dim_p(n),
        || format!("rank {}", span.dim()),
    );

    rep.record(
        format!("corr.theta.form.N{n}"),
        "<ϑ′f, ϑ′g> = N! <f,g>",
        nn,
        first_failure(
            (0..vs.len()).flat_map(|a| (a..vs.len()).map(move |b| (a, b))),
            |&(a, b)| {
                let lhs = images[a].inner(&images[b]);
                (lhs != &scale * hermitian(&vs[a], &vs[b]))
                    .then(|| format!("<{}, {}>", vs[a], vs[b]))
            },
        ),
    );

    rep.record(
        format!("corr.theta.sigma_s.N{n}"),
        "ϑ′ ∘ σ = S ∘ ϑ′",
        nn,
        first_failure(vs.iter().zip(&images), |(v, m)| {
            let lhs = theta_scaled(t, &sigma(v)).unwrap();
            (t.s_map(m).as_ref() != Some(&lhs)).then(|| format!("{v}"))
        }),
    );

    let phi = t.phi();
    rep.record(
        format!("corr.theta.casimir_phi.N{n}"),
        "ϑ′ C_1 = C^(1) ϑ′ with C^(1)(B) = φB",
        nn,
        first_failure(vs.iter().zip(&images), |(v, m)| {
            let lhs = theta_scaled(t, &apply_c(1, v)).unwrap();
            (lhs != phi.mul(m)).then(|| format!("{v}"))
        }),
    );

    rep.record(
        format!("corr.wedderburn.N{n}"),
        "ϑ′ R_1^ℓ(Ker L_1 ∩ P_{N-2ℓ}) = φ_ℓ T for every ℓ",
        nn,
        wedderburn_correspondence(t),
    );
    rep
}

/// Mutual span containment of ϑ′(summand ℓ) and φ_ℓ T, in E*AE* coordinates.
pub fn wedderburn_correspondence(t: &TAlgebra) -> Result<(), String> {
    let n = t.n;
    let summands = graded_decomposition(1, n).map_err(|e| e.to_string())?;
    let ideals = t.wedderburn()?;
    if summands.len() != ideals.len() {
        return Err(format!(
            "{} summands vs {} ideals",
            summands.len(),
            ideals.len()
        ));
    }
    for (s, w) in summands.iter().zip(&ideals) {
        let mut span = SpanBasis::new();
        for v in &s.basis {
            let m = theta_scaled(t, v)?;
            let c = t
                .star_coordinates(&m)
                .ok_or_else(|| format!("ϑ′ image outside T at ℓ={}", s.ell))?;
            span.insert(&c);
        }
        if !(span.contains_span(&w.span) && w.span.contains_span(&span)) {
            return Err(format!(
                "ℓ={}: image dim {}, ideal dim {}, spans differ",
                s.ell,
                span.dim(),
                w.span.dim()
            ));
        }
    }
    Ok(())
}

/// Everything in this module for one N and basepoint.
pub fn check_all(n: u32, kappa: Vertex, tensor_oracle: bool) -> VerificationReport {
    let cube = Hypercube::new(n);
    let t = cube.t_algebra(kappa);
    let oracle = tensor_oracle.then_some(&cube);
    let mut rep = check_ddag(n, oracle);
    rep.extend(check_eps(&t, oracle));
    rep.extend(check_theta(&t));
    rep
}

/// Examples from the rules at N=1, kept as a named sanity check.
pub fn small_examples() -> Result<(), String> {
    let t = Hypercube::new(1).t_algebra(0);
    let e = |h, i, j| {
        t.basis_element(TBasisKind::EstarAEstar, TripleIndex::new(h, i, j))
            .unwrap()
            .clone()
    };
    let x = theta_scaled(&t, &PolyVec::monomial(1, 0, 0, 0))?;
    if x != e(0, 0, 0) || x.get(0, 0) != Rational::one() || x.nonzero_count() != 1 {
        return Err("ϑ′(x) != e_{κ,κ}".into());
    }
    if theta_scaled(&t, &PolyVec::monomial(0, 1, 0, 0))? != e(0, 1, 1) {
        return Err("ϑ′(y) != E*_1 A_0 E*_1".into());
    }
    let xs = theta_scaled(&t, &PolyVec::starred(1, 0, 0, 0))?;
    let want = t
        .basis_element(TBasisKind::EAstarE, TripleIndex::new(0, 0, 0))
        .unwrap();
    if xs != *want || t.s_map(&x).as_ref() != Some(want) {
        return Err("ϑ′(x*) or S(ϑ′(x)) != E_0 A*_0 E_0".into());
    }
    Ok(())
}
