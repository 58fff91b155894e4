//! Report-producing checks for P_N, exhaustive on basis vectors.

use super::*;
use crate::exact::factorial;
use crate::report::VerificationReport;
use crate::sl4core::tau;

fn both_bases(n: u32) -> Vec<PolyVec> {
    [BasisTag::Monomial, BasisTag::Starred]
        .into_iter()
        .flat_map(|tag| {
            enumerate_profiles(n)
                .into_iter()
                .map(move |p| PolyVec::basis(tag, p))
        })
        .collect()
}

fn monomials(n: u32) -> Vec<PolyVec> {
    enumerate_profiles(n)
        .into_iter()
        .map(|p| PolyVec::basis(BasisTag::Monomial, p))
        .collect()
}

fn same(a: &PolyVec, b: &PolyVec) -> bool {
    convert_basis(a, BasisTag::Monomial) == convert_basis(b, BasisTag::Monomial)
}

fn scan<T>(
    items: impl IntoIterator<Item = T>,
    test: impl Fn(&T) -> Option<String>,
) -> Result<(), String> {
    items.into_iter().find_map(|x| test(&x)).map_or(Ok(()), Err)
}

/// Σ_a c_a M_{var(a)} D_{var'(a)} v.
fn md_sum(terms: &[(i64, Variable, Variable)], v: &PolyVec) -> PolyVec {
    let mut acc = PolyVec::zero(v.tag());
    for (c, m, d) in terms {
        acc = &acc + &apply_m(*m, &apply_d(*d, v)).scale(&int(*c));
    }
    acc
}

/// The D/M factorizations: A_k = Σ_a M_{a⊕k} D_a, A*_k = Σ_a sign·M_a D_a,
/// and the same with starred variables and the roles of A, A* exchanged.
fn md_form(id: GeneratorId, starred: bool) -> Vec<(i64, Variable, Variable)> {
    let var = |a: usize| {
        if starred {
            Variable::star(a)
        } else {
            Variable::plain(a)
        }
    };
    let k = id.index as usize;
    let shifts = (id.kind == GenKind::A) != starred;
    (0..4)
        .map(|a| {
            if shifts {
                (1, var(a ^ k), var(a))
            } else {
                (CARTAN[k - 1][a], var(a), var(a))
            }
        })
        .collect()
}

pub fn check_operator_identities(n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let nn = Some(n);
    let vs = both_bases(n);
    let gens = GeneratorId::all();

    for starred in [false, true] {
        let which = if starred { "starred" } else { "plain" };
        rep.record(
            format!("poly.md_factorization.{which}.N{n}"),
            if starred {
                "A*_k = Σ M_{a*⊕k} D_{a*}, A_k = Σ ± M_{a*} D_{a*}"
            } else {
                "A_k = Σ M_{a⊕k} D_a, A*_k = Σ ± M_a D_a"
            },
            nn,
            scan(
                gens.iter().flat_map(|g| vs.iter().map(move |v| (g, v))),
                |(g, v)| {
                    let table = act_generator(**g, v);
                    let md = md_sum(&md_form(**g, starred), v);
                    (!same(&table, &md)).then(|| format!("{g} on {v}: table {table}, D/M {md}"))
                },
            ),
        );
    }

    rep.record(
        format!("poly.weyl.N{n}"),
        "[D_a, M_b] = δ_ab I",
        nn,
        scan(
            (0..4)
                .flat_map(|a| (0..4).map(move |b| (a, b)))
                .flat_map(|ab| vs.iter().map(move |v| (ab, v))),
            |((a, b), v)| {
                let (d, m) = (Variable::plain(*a), Variable::plain(*b));
                let lhs = &apply_d(d, &apply_m(m, v)) - &apply_m(m, &apply_d(d, v));
                let want = if a == b {
                    (*v).clone()
                } else {
                    PolyVec::zero(v.tag())
                };
                (!same(&lhs, &want)).then(|| format!("[D_{a}, M_{b}] on {v}"))
            },
        ),
    );

    rep.record(
        format!("poly.sigma_conjugation.N{n}"),
        "σ g σ^{-1} = τ(g) on P_N for the six generators",
        nn,
        scan(
            gens.iter().flat_map(|g| vs.iter().map(move |v| (g, v))),
            |(g, v)| {
                // τ(A_i) = A*_i as matrices, so σ A_i σ^{-1} must act as A*_i.
                let tg = tau(&crate::sl4core::generator(**g));
                let dual = g.dual();
                if tg != crate::sl4core::generator(dual) {
                    return Some(format!("τ({g}) != {dual}"));
                }
                let lhs = sigma(&act_generator(**g, &sigma(v)));
                (!same(&lhs, &act_generator(dual, v))).then(|| format!("σ{g}σ on {v}"))
            },
        ),
    );

    for i in 1..=3u8 {
        rep.record(
            format!("poly.lr_bracket.{i}.N{n}"),
            "[L_i, R_i] = Ω + 2I",
            nn,
            scan(vs.iter(), |v| {
                let lhs = &apply_l(i, &apply_r(i, v)) - &apply_r(i, &apply_l(i, v));
                let rhs = &apply_omega(v) + &v.scale(&int(2));
                (!same(&lhs, &rhs)).then(|| format!("on {v}"))
            }),
        );
        let others: Vec<GeneratorId> = gens.iter().copied().filter(|g| g.index != i).collect();
        rep.record(
            format!("poly.lr_commute.{i}.N{n}"),
            "L_i and R_i commute with A_j, A*_j for j ≠ i",
            nn,
            scan(
                others.iter().flat_map(|g| vs.iter().map(move |v| (g, v))),
                |(g, v)| {
                    let l =
                        &apply_l(i, &act_generator(**g, v)) - &act_generator(**g, &apply_l(i, v));
                    let r =
                        &apply_r(i, &act_generator(**g, v)) - &act_generator(**g, &apply_r(i, v));
                    (!(l.is_zero() && r.is_zero())).then(|| format!("L_{i}/R_{i} with {g} on {v}"))
                },
            ),
        );
        rep.record(
            format!("poly.casimir_three_way.{i}.N{n}"),
            "C_i = (Ω+2)²/2 − L_iR_i − R_iL_i = table = both generator forms",
            nn,
            scan(vs.iter(), |v| {
                let c = apply_c(i, v);
                let table = apply_c_table(i, v);
                let [g1, g2] = apply_c_generators(i, v);
                (!(same(&c, &table) && same(&c, &g1) && same(&c, &g2)))
                    .then(|| format!("on {v}: {c} / {table} / {g1} / {g2}"))
            }),
        );
    }
    rep
}

pub fn check_forms(n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let nn = Some(n);
    let ms = monomials(n);
    let vs = both_bases(n);
    let pairs = |xs: &[PolyVec]| -> Vec<(usize, usize)> {
        (0..xs.len())
            .flat_map(|a| (a..xs.len()).map(move |b| (a, b)))
            .collect()
    };

    rep.record(
        format!("poly.adjoint.N{n}"),
        "<g f, h> = <f, g h> for the six generators",
        nn,
        scan(
            GeneratorId::all()
                .into_iter()
                .flat_map(|g| pairs(&ms).into_iter().map(move |ab| (g, ab))),
            |(g, (a, b))| {
                let (f, h) = (&ms[*a], &ms[*b]);
                (hermitian(&act_generator(*g, f), h) != hermitian(f, &act_generator(*g, h)))
                    .then(|| format!("{g} on {f}, {h}"))
            },
        ),
    );

    let lower = if n >= 2 { monomials(n - 2) } else { Vec::new() };
    rep.record(
        format!("poly.lr_adjoint.N{n}"),
        "<L_i f, g> = <f, R_i g>",
        nn,
        scan(
            (1..=3u8).flat_map(|i| {
                ms.iter()
                    .flat_map(|f| lower.iter().map(move |g| (f, g)))
                    .map(move |(f, g)| (i, f, g))
            }),
            |(i, f, g)| {
                (hermitian(&apply_l(*i, f), g) != hermitian(f, &apply_r(*i, g)))
                    .then(|| format!("i={i}, {f}, {g}"))
            },
        ),
    );

    rep.record(
        format!("poly.sigma_isometry.N{n}"),
        "<σf, σg> = <f, g>",
        nn,
        scan(pairs(&vs), |(a, b)| {
            let (f, g) = (&vs[*a], &vs[*b]);
            (hermitian(&sigma(f), &sigma(g)) != hermitian(f, g)).then(|| format!("{f}, {g}"))
        }),
    );

    let xsn = PolyVec::basis(BasisTag::Starred, Profile::new(n, 0, 0, 0));
    let want = factorial(n) * crate::exact::pow2(-(n as i32));
    rep.record(
        format!("poly.normalization.N{n}"),
        "<x^r y^s z^t w^u, x*^N> = N!/2^N",
        nn,
        scan(ms.iter(), |m| {
            (hermitian(m, &xsn) != want).then(|| format!("{m}"))
        }),
    );

    rep.record(
        format!("poly.basis_forms.N{n}"),
        "monomials orthogonal with ‖x^r y^s z^t w^u‖² = r!s!t!u!, and the same for the starred basis",
        nn,
        scan(pairs(&vs), |(a, b)| {
            let (f, g) = (&vs[*a], &vs[*b]);
            if f.tag() != g.tag() {
                return None;
            }
            let (p, _) = f.terms().next().unwrap();
            let want = if a == b { p.weight() } else { Rational::zero() };
            (hermitian(f, g) != want).then(|| format!("<{f}, {g}>"))
        }),
    );
    rep
}

pub fn check_structure(n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let nn = Some(n);
    rep.check(
        format!("poly.dim.N{n}"),
        "|𝒫_N| = C(N+3,3)",
        nn,
        int(enumerate_profiles(n).len() as i64) == binomial(n as i64 + 3, 3),
        || "profile count".into(),
    );
    rep.record(
        format!("poly.round_trip.N{n}"),
        "converting to the other basis and back is the identity",
        nn,
        scan(both_bases(n).iter(), |v| {
            (convert_basis(&convert_basis(v, v.tag().other()), v.tag()) != **v)
                .then(|| format!("{v}"))
        }),
    );
    for which in [Cartan::H, Cartan::HStar] {
        rep.record(
            format!("poly.weights.{which:?}.N{n}"),
            "profiles ↔ weights (r+s−t−u, r−s+t−u, r−s−t+u) is a bijection onto 𝒫'_N",
            nn,
            weight_decomposition(n, which).map(|_| ()).map_err(|e| e.0),
        );
    }
    for kind in [GenKind::A, GenKind::AStar] {
        for i in 1..=3u8 {
            let dims = eigenspace_dims(i, kind, n);
            let want: BTreeMap<i64, usize> = (0..=n)
                .map(|k| (n as i64 - 2 * k as i64, ((k + 1) * (n - k + 1)) as usize))
                .collect();
            let id = GeneratorId { kind, index: i };
            rep.check(
                format!("poly.eigenspaces.{id}.N{n}"),
                "eigenvalue N−2k with multiplicity (k+1)(N−k+1)",
                nn,
                dims == want,
                || format!("{dims:?}"),
            );
        }
    }
    rep.record(
        format!("poly.words.N{n}"),
        "A_1^s A_2^t A_3^u x^N and A*_1^s A*_2^t A*_3^u x*^N are bases",
        nn,
        monomial_from_a_words(n)
            .and_then(|_| starred_from_astar_words(n))
            .map(|_| ())
            .map_err(|e| e.0),
    );
    rep
}

/// Graded decomposition for index i with the sl2 identities on each summand.
pub fn check_decomposition(i: u8, n: u32, fam: &specialfn::KrawtchoukFamily) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let nn = Some(n);
    rep.record(
        format!("decomp.kernel_basis.{i}.N{n}"),
        "v_{j,k} ∈ Ker L_i, orthogonal, ‖v_{j,k}‖² = N!/(C(N,j)C(N,k))",
        nn,
        kernel_l_basis_with(i, n, fam).map(|_| ()).map_err(|e| e.0),
    );
    match graded_decomposition(i, n) {
        Err(e) => rep.record(
            format!("decomp.graded.{i}.N{n}"),
            "P_N = ⊕ R_i^ℓ(Ker L_i ∩ P_{N−2ℓ}) orthogonal, dims (N−2ℓ+1)², C_i = (N−2ℓ)(N−2ℓ+2)/2",
            nn,
            Err(e.0),
        ),
        Ok(summands) => {
            rep.record(
                format!("decomp.graded.{i}.N{n}"),
                "P_N = ⊕ R_i^ℓ(Ker L_i ∩ P_{N−2ℓ}) orthogonal, dims (N−2ℓ+1)², C_i = (N−2ℓ)(N−2ℓ+2)/2",
                nn,
                Ok(()),
            );
            rep.record(
                format!("decomp.lr_scalars.{i}.N{n}"),
                "on the ℓ-summand L_iR_i = (ℓ+1)(N−2ℓ+ℓ+2)I and R_iL_i = ℓ(N−2ℓ+ℓ+1)I",
                nn,
                scan(
                    summands
                        .iter()
                        .flat_map(|s| s.basis.iter().map(move |v| (s.ell, v))),
                    |(ell, v)| {
                        let m = (n - 2 * ell) as i64;
                        let l = *ell as i64;
                        let lr = apply_l(i, &apply_r(i, v));
                        let rl = apply_r(i, &apply_l(i, v));
                        let ok = lr == v.scale(&int((l + 1) * (m + l + 2)))
                            && rl == v.scale(&int(l * (m + l + 1)));
                        (!ok).then(|| format!("ℓ={ell}, {v}"))
                    },
                ),
            );
        }
    }
    if n >= 2 {
        let r_images: Vec<Vec<Rational>> = monomials(n - 2)
            .iter()
            .map(|v| apply_r(i, v).to_dense(n))
            .collect();
        let kernel = kernel_l_basis_with(i, n, fam).unwrap_or_default();
        let orth = r_images.iter().all(|r| {
            let rv = PolyVec::from_dense(BasisTag::Monomial, n, r);
            kernel.iter().all(|k| hermitian(&rv, &k.vector).is_zero())
        });
        rep.check(
            format!("decomp.r_plus_kernel.{i}.N{n}"),
            "P_N = R_i(P_{N−2}) ⊕ (Ker L_i ∩ P_N), orthogonal; R_i injective",
            nn,
            orth && linalg::rank(&r_images) == dim_p(n - 2)
                && r_images.len() + kernel.len() == dim_p(n),
            || "sum is not orthogonal and direct".into(),
        );
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_n_pass() {
        for n in 0..=3 {
            let mut rep = check_operator_identities(n);
            rep.extend(check_forms(n));
            rep.extend(check_structure(n));
            for i in 1..=3 {
                rep.extend(check_decomposition(i, n, &specialfn::krawtchouk(n)));
            }
            assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }
}
