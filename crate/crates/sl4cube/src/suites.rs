//! Suite runners over a range of N, with fault injection for negative controls.

use crate::cube::{self, Hypercube, Vertex};
use crate::exact::int;
use crate::polyspace::{act_generator, checks, hermitian, random_polyvec, BasisTag};
use crate::report::VerificationReport;
use crate::sl4core::{self, GeneratorId, GeneratorSet};
use crate::specialfn::{self, calp_sum_general, TermIndex, TransitionKey};
use crate::{correspond, tensorspace, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Largest N for the tensor-level Fix(G) checks.
pub const FIX_N_MAX: u32 = 4;
/// Largest N for the exhaustive generating-function comparison.
pub const GENFUNC_N_MAX: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Sl4,
    Poly,
    Special,
    Cube,
    Tensor,
    Correspond,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Sl4,
        Suite::Poly,
        Suite::Special,
        Suite::Cube,
        Suite::Tensor,
        Suite::Correspond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sl4 => "sl4",
            Suite::Poly => "poly",
            Suite::Special => "special",
            Suite::Cube => "cube",
            Suite::Tensor => "tensor",
            Suite::Correspond => "correspond",
        }
    }

    /// sl4 does not depend on N and runs once.
    pub fn per_n(self) -> bool {
        self != Suite::Sl4
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// Deliberate corruptions used as negative controls.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Adds 1 to entry (1,1) of A_1.
    CorruptGenerator,
    /// Flips the sign of the (1,0,0,0,0,0) term of the hypergeometric sum.
    CorruptCalpSign,
    /// Adds 1 to the constant term of f_1.
    CorruptKrawtchouk,
}

impl Fault {
    pub const ALL: [Fault; 3] = [
        Fault::CorruptGenerator,
        Fault::CorruptCalpSign,
        Fault::CorruptKrawtchouk,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::CorruptGenerator => "corrupt-generator",
            Fault::CorruptCalpSign => "corrupt-calp-sign",
            Fault::CorruptKrawtchouk => "corrupt-krawtchouk",
        }
    }
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Fault::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown fault {s:?}"))
    }
}

const FLIPPED_TERM: TermIndex = [1, 0, 0, 0, 0, 0];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub suites: Vec<Suite>,
    pub oracle_n_max: u32,
    pub basepoint: Vertex,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub fault: Option<Fault>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_min: 0,
            n_max: 5,
            suites: Suite::ALL.to_vec(),
            oracle_n_max: 3,
            basepoint: 0,
            seed: 0,
            fault: None,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.n_min > self.n_max {
            return Err(format!(
                "n_min = {} exceeds n_max = {}",
                self.n_min, self.n_max
            ));
        }
        if self.oracle_n_max > self.n_max {
            return Err(format!(
                "oracle_n_max = {} exceeds n_max = {}",
                self.oracle_n_max, self.n_max
            ));
        }
        if self.n_max > cube::MAX_N {
            return Err(format!(
                "n_max = {} exceeds the supported {}",
                self.n_max,
                cube::MAX_N
            ));
        }
        if self.suites.is_empty() {
            return Err("no suite selected".into());
        }
        Ok(())
    }

    /// The basepoint restricted to the first N coordinates.
    pub fn kappa(&self, n: u32) -> Vertex {
        self.basepoint & ((1u32 << n) - 1)
    }

    /// One job per (suite, N), or a single job for suites independent of N,
    /// in suite order then N order.
    pub fn jobs(&self) -> Vec<(Suite, Option<u32>)> {
        let mut suites = self.suites.clone();
        suites.sort();
        suites.dedup();
        suites
            .into_iter()
            .flat_map(|s| {
                if s.per_n() {
                    (self.n_min..=self.n_max).map(|n| (s, Some(n))).collect()
                } else {
                    vec![(s, None)]
                }
            })
            .collect()
    }

    fn rng(&self, suite: Suite, n: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(((suite as u64) << 32) | n as u64);
        rng
    }
}

fn generators(fault: Option<Fault>) -> GeneratorSet {
    let mut gens = GeneratorSet::standard();
    if fault == Some(Fault::CorruptGenerator) {
        let m = gens.get_mut(GeneratorId::a(1));
        *m = &*m + &sl4core::Matrix4::elementary(1, 1);
    }
    gens
}

fn krawtchouk(n: u32, fault: Option<Fault>) -> specialfn::KrawtchoukFamily {
    let mut fam = specialfn::krawtchouk(n);
    if fault == Some(Fault::CorruptKrawtchouk) {
        fam.polys[1][0] += int(1);
    }
    fam
}

pub fn run_sl4(cfg: &SuiteConfig) -> VerificationReport {
    sl4core::check_presentation_of(&generators(cfg.fault))
}

pub fn run_poly(n: u32, cfg: &SuiteConfig) -> VerificationReport {
    let fam = krawtchouk(n, cfg.fault);
    let mut rep = checks::check_operator_identities(n);
    rep.extend(checks::check_forms(n));
    rep.extend(checks::check_structure(n));
    for i in 1..=3 {
        rep.extend(checks::check_decomposition(i, n, &fam));
    }
    let mut rng = cfg.rng(Suite::Poly, n);
    let mut bad = None;
    'outer: for _ in 0..8 {
        let tag = if rand::Rng::gen_bool(&mut rng, 0.5) {
            BasisTag::Monomial
        } else {
            BasisTag::Starred
        };
        let f = random_polyvec(&mut rng, n, tag);
        let g = random_polyvec(&mut rng, n, tag.other());
        for id in GeneratorId::all() {
            if hermitian(&act_generator(id, &f), &g) != hermitian(&f, &act_generator(id, &g)) {
                bad = Some(format!("{id} on f={f}, g={g}"));
                break 'outer;
            }
        }
    }
    rep.record(
        format!("poly.adjoint_random.N{n}"),
        "<g f, h> = <f, g h> on seeded random mixed-basis vectors",
        Some(n),
        bad.map_or(Ok(()), Err),
    );
    rep
}

pub fn run_special(n: u32, cfg: &SuiteConfig) -> VerificationReport {
    let corrupt = cfg.fault == Some(Fault::CorruptCalpSign);
    let eval = move |k: &TransitionKey| {
        if corrupt {
            specialfn::calp_sum_corrupted(k, FLIPPED_TERM)
        } else {
            specialfn::calp_sum(k)
        }
    };
    let eval_general = move |n: u32, tail: [i64; 3], star: [u32; 3]| -> Rational {
        calp_sum_general(n, &tail.map(int), &star.map(|x| int(x as i64)), |m| {
            corrupt && *m == FLIPPED_TERM
        })
    };
    let mut rep = VerificationReport::new();
    if n <= GENFUNC_N_MAX {
        let table = specialfn::genfunc_table(n);
        let bad = table.iter().find(|(k, v)| eval(k) != **v).map(|(k, v)| {
            format!(
                "key {:?};{:?}: sum {} vs generating function {v}",
                k.tail,
                k.star_tail,
                eval(k)
            )
        });
        rep.record(
            format!("special.genfunc.N{n}"),
            "calP_sum = coefficient of the generating function for every key",
            Some(n),
            bad.map_or(Ok(()), Err),
        );
    } else {
        rep.skip(
            format!("special.genfunc.N{n}"),
            "generating-function comparison above N=4",
            Some(n),
        );
    }
    rep.extend(specialfn::check_orthogonality_with(n, &eval));
    rep.extend(specialfn::check_recurrences_with(n, &eval_general));
    rep.extend(specialfn::check_vee_recurrences(n));
    rep.extend(specialfn::check_vee_operator_identities(n));
    rep.extend(specialfn::check_krawtchouk_family(&krawtchouk(
        n, cfg.fault,
    )));
    rep
}

pub fn run_cube(n: u32, cfg: &SuiteConfig) -> VerificationReport {
    let cube = Hypercube::new(n);
    let kappa = cfg.kappa(n);
    let mut rep = cube::check_cube(&cube, kappa, &krawtchouk(n, cfg.fault));
    rep.extend(cube::check_t_algebra(&cube.t_algebra(kappa)));
    rep
}

pub fn run_tensor(n: u32, cfg: &SuiteConfig) -> VerificationReport {
    if n > FIX_N_MAX {
        let mut rep = VerificationReport::new();
        rep.skip(
            format!("tensor.fixed_space.N{n}"),
            "tensor enumeration above N=4",
            Some(n),
        );
        return rep;
    }
    tensorspace::check_fixed_space(n, n <= cfg.oracle_n_max, &mut cfg.rng(Suite::Tensor, n))
}

pub fn run_correspond(n: u32, cfg: &SuiteConfig) -> VerificationReport {
    let mut rep = correspond::check_all(n, cfg.kappa(n), n <= cfg.oracle_n_max);
    if n == 1 {
        rep.record(
            "corr.small_examples",
            "ddag, eps and theta basis rules at N=1",
            Some(1),
            correspond::small_examples(),
        );
    }
    rep
}

pub fn run_job(suite: Suite, n: Option<u32>, cfg: &SuiteConfig) -> VerificationReport {
    match (suite, n) {
        (Suite::Sl4, _) => run_sl4(cfg),
        (s, None) => panic!("suite {s} needs N"),
        (Suite::Poly, Some(n)) => run_poly(n, cfg),
        (Suite::Special, Some(n)) => run_special(n, cfg),
        (Suite::Cube, Some(n)) => run_cube(n, cfg),
        (Suite::Tensor, Some(n)) => run_tensor(n, cfg),
        (Suite::Correspond, Some(n)) => run_correspond(n, cfg),
    }
}

/// Runs every job on the rayon pool and concatenates reports in job order.
pub fn run(cfg: &SuiteConfig) -> VerificationReport {
    let parts: Vec<VerificationReport> = cfg
        .jobs()
        .into_par_iter()
        .map(|(s, n)| run_job(s, n, cfg))
        .collect();
    let mut rep = VerificationReport::new();
    for p in parts {
        rep.extend(p);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(suite: Suite, n_max: u32, fault: Option<Fault>) -> SuiteConfig {
        SuiteConfig {
            n_max,
            suites: vec![suite],
            oracle_n_max: n_max.min(2),
            fault,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        assert!(SuiteConfig {
            n_min: 3,
            n_max: 2,
            ..SuiteConfig::default()
        }
        .validate()
        .is_err());
        assert!(SuiteConfig {
            oracle_n_max: 6,
            ..SuiteConfig::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn jobs_are_ordered() {
        let c = SuiteConfig {
            n_max: 1,
            suites: vec![Suite::Cube, Suite::Sl4, Suite::Cube],
            ..SuiteConfig::default()
        };
        assert_eq!(
            c.jobs(),
            vec![
                (Suite::Sl4, None),
                (Suite::Cube, Some(0)),
                (Suite::Cube, Some(1))
            ]
        );
    }

    #[test]
    fn faults_are_caught() {
        for (suite, fault) in [
            (Suite::Sl4, Fault::CorruptGenerator),
            (Suite::Special, Fault::CorruptCalpSign),
            (Suite::Special, Fault::CorruptKrawtchouk),
            (Suite::Poly, Fault::CorruptKrawtchouk),
        ] {
            assert!(run(&cfg(suite, 2, None)).all_passed(), "{suite} clean");
            let rep = run(&cfg(suite, 2, Some(fault)));
            let f = rep
                .failures()
                .next()
                .unwrap_or_else(|| panic!("{suite} {fault:?} undetected"));
            assert!(f.witness.is_some());
        }
    }

    #[test]
    fn basepoint_masked() {
        let c = SuiteConfig {
            basepoint: 0b1011,
            ..SuiteConfig::default()
        };
        assert_eq!(c.kappa(2), 0b11);
        assert_eq!(c.kappa(0), 0);
    }
}
