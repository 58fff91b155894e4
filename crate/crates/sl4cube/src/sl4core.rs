//! The 4x4 realization of sl4: generators, presentation, a basis, Υ and τ.

use crate::exact::{frac, int, linalg, Rational};
use crate::report::VerificationReport;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix4 {
    pub entries: [[Rational; 4]; 4],
}

impl Matrix4 {
    pub fn zero() -> Self {
        Self::from_fn(|_, _| Rational::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> Rational) -> Self {
        Matrix4 {
            entries: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn from_ints(rows: [[i64; 4]; 4]) -> Self {
        Self::from_fn(|i, j| int(rows[i][j]))
    }

    pub fn diag(d: [i64; 4]) -> Self {
        Self::from_fn(|i, j| if i == j { int(d[i]) } else { Rational::zero() })
    }

    /// E_{i,j} with 1-based indices.
    pub fn elementary(i: usize, j: usize) -> Self {
        Self::from_fn(|a, b| {
            if a + 1 == i && b + 1 == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_fn(|i, j| &self.entries[i][j] * c)
    }

    pub fn trace(&self) -> Rational {
        (0..4).map(|i| self.entries[i][i].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn flatten(&self) -> Vec<Rational> {
        self.entries.iter().flatten().cloned().collect()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }
}

impl Add for &Matrix4 {
    type Output = Matrix4;
    fn add(self, o: &Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| &self.entries[i][j] + &o.entries[i][j])
    }
}

impl Sub for &Matrix4 {
    type Output = Matrix4;
    fn sub(self, o: &Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| &self.entries[i][j] - &o.entries[i][j])
    }
}

impl Neg for &Matrix4 {
    type Output = Matrix4;
    fn neg(self) -> Matrix4 {
        Matrix4::from_fn(|i, j| -&self.entries[i][j])
    }
}

impl Mul for &Matrix4 {
    type Output = Matrix4;
    fn mul(self, o: &Matrix4) -> Matrix4 {
        Matrix4::from_fn(|i, j| (0..4).map(|k| &self.entries[i][k] * &o.entries[k][j]).sum())
    }
}

impl fmt::Debug for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Matrix4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(crate::exact::format_rational).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

pub fn bracket(x: &Matrix4, y: &Matrix4) -> Matrix4 {
    &(x * y) - &(y * x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    A,
    AStar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId {
    pub kind: GenKind,
    pub index: u8,
}

impl GeneratorId {
    pub const fn a(index: u8) -> Self {
        GeneratorId {
            kind: GenKind::A,
            index,
        }
    }

    pub const fn astar(index: u8) -> Self {
        GeneratorId {
            kind: GenKind::AStar,
            index,
        }
    }

    /// A1, A2, A3, A*1, A*2, A*3.
    pub fn all() -> [GeneratorId; 6] {
        [
            Self::a(1),
            Self::a(2),
            Self::a(3),
            Self::astar(1),
            Self::astar(2),
            Self::astar(3),
        ]
    }

    /// The generator exchanged with this one by τ (and by σ on polynomials).
    pub fn dual(self) -> Self {
        GeneratorId {
            kind: match self.kind {
                GenKind::A => GenKind::AStar,
                GenKind::AStar => GenKind::A,
            },
            index: self.index,
        }
    }

    fn slot(self) -> usize {
        assert!(
            (1..=3).contains(&self.index),
            "generator index must be 1..3"
        );
        match self.kind {
            GenKind::A => self.index as usize - 1,
            GenKind::AStar => self.index as usize + 2,
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::A => write!(f, "A{}", self.index),
            GenKind::AStar => write!(f, "A*{}", self.index),
        }
    }
}

/// Six matrices standing in for A1..A3, A*1..A*3. The presentation check
/// takes one of these so that corrupted sets can be fed through it.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSet {
    mats: [Matrix4; 6],
}

impl GeneratorSet {
    pub fn standard() -> Self {
        GeneratorSet {
            mats: GeneratorId::all().map(generator),
        }
    }

    pub fn get(&self, id: GeneratorId) -> &Matrix4 {
        &self.mats[id.slot()]
    }

    pub fn get_mut(&mut self, id: GeneratorId) -> &mut Matrix4 {
        &mut self.mats[id.slot()]
    }

    fn a(&self, i: u8) -> &Matrix4 {
        self.get(GeneratorId::a(i))
    }

    fn s(&self, i: u8) -> &Matrix4 {
        self.get(GeneratorId::astar(i))
    }
}

pub fn generator(id: GeneratorId) -> Matrix4 {
    match (id.kind, id.index) {
        (GenKind::A, 1) => {
            Matrix4::from_ints([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
        }
        (GenKind::A, 2) => {
            Matrix4::from_ints([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
        }
        (GenKind::A, 3) => {
            Matrix4::from_ints([[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
        }
        (GenKind::AStar, 1) => Matrix4::diag([1, 1, -1, -1]),
        (GenKind::AStar, 2) => Matrix4::diag([1, -1, 1, -1]),
        (GenKind::AStar, 3) => Matrix4::diag([1, -1, -1, 1]),
        _ => panic!("generator index must be 1..3, got {}", id.index),
    }
}

fn eq_witness(lhs: &Matrix4, rhs: &Matrix4) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("lhs={lhs} rhs={rhs}"))
    }
}

const PERMS: [[u8; 3]; 6] = [
    [1, 2, 3],
    [1, 3, 2],
    [2, 1, 3],
    [2, 3, 1],
    [3, 1, 2],
    [3, 2, 1],
];

/// Evaluates every instance of the four relation families on `gens`,
/// over all index choices rather than up to symmetry.
pub fn check_presentation_of(gens: &GeneratorSet) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let zero = Matrix4::zero();
    let four = int(4);
    for i in 1..=3u8 {
        for j in (1..=3u8).filter(|&j| j != i) {
            rep.record(
                format!("sl4.commute.A{i}.A{j}"),
                "[A_i, A_j] = 0",
                None,
                eq_witness(&bracket(gens.a(i), gens.a(j)), &zero),
            );
            rep.record(
                format!("sl4.commute.A*{i}.A*{j}"),
                "[A*_i, A*_j] = 0",
                None,
                eq_witness(&bracket(gens.s(i), gens.s(j)), &zero),
            );
        }
    }
    for i in 1..=3u8 {
        rep.record(
            format!("sl4.commute.A{i}.A*{i}"),
            "[A_i, A*_i] = 0",
            None,
            eq_witness(&bracket(gens.a(i), gens.s(i)), &zero),
        );
    }
    for i in 1..=3u8 {
        for j in (1..=3u8).filter(|&j| j != i) {
            let lhs = bracket(gens.a(i), &bracket(gens.a(i), gens.s(j)));
            rep.record(
                format!("sl4.double.A{i}.A*{j}"),
                "[A_i, [A_i, A*_j]] = 4 A*_j",
                None,
                eq_witness(&lhs, &gens.s(j).scale(&four)),
            );
            let lhs = bracket(gens.s(j), &bracket(gens.s(j), gens.a(i)));
            rep.record(
                format!("sl4.double.A*{j}.A{i}"),
                "[A*_j, [A*_j, A_i]] = 4 A_i",
                None,
                eq_witness(&lhs, &gens.a(i).scale(&four)),
            );
        }
    }
    for [h, i, j] in PERMS {
        let forms = [
            bracket(gens.a(h), &bracket(gens.s(i), gens.a(j))),
            bracket(gens.s(h), &bracket(gens.a(i), gens.s(j))),
            bracket(gens.a(j), &bracket(gens.s(i), gens.a(h))),
            bracket(gens.s(j), &bracket(gens.a(i), gens.s(h))),
        ];
        let outcome = match forms.iter().position(|f| f != &forms[0]) {
            None => Ok(()),
            Some(k) => Err(format!("form 0 = {} but form {k} = {}", forms[0], forms[k])),
        };
        rep.record(
            format!("sl4.mixed.{h}{i}{j}"),
            "[A_h,[A*_i,A_j]] = [A*_h,[A_i,A*_j]] = [A_j,[A*_i,A_h]] = [A*_j,[A_i,A*_h]]",
            None,
            outcome,
        );
    }
    for target in ElementaryTarget::all() {
        rep.record(
            format!("sl4.inverse.{}", target.label()),
            "the inverse-map formula in A_i, A*_i reproduces the elementary matrix",
            None,
            eq_witness(&elementary_from(gens, target), &target.matrix()),
        );
    }
    let r = rank_of(&basis15_of(gens));
    rep.check(
        "sl4.basis15.rank",
        "A_i, A*_i, [A_i,A*_(i+1)], [A*_i,A_(i+1)], [A*_i,[A*_(i+1),A_(i+2)]] have rank 15",
        None,
        r == 15,
        || format!("rank {r}"),
    );
    rep
}

pub fn check_presentation() -> VerificationReport {
    check_presentation_of(&GeneratorSet::standard())
}

/// The fifteen-element basis, certified by an exact rank computation.
pub fn basis15() -> Vec<Matrix4> {
    let list = basis15_of(&GeneratorSet::standard());
    let r = rank_of(&list);
    assert_eq!(r, 15, "sl4 basis has rank {r}");
    list
}

fn rank_of(list: &[Matrix4]) -> usize {
    let flat: Vec<Vec<Rational>> = list.iter().map(Matrix4::flatten).collect();
    linalg::rank(&flat)
}

fn basis15_of(gens: &GeneratorSet) -> Vec<Matrix4> {
    let a = |i| gens.a(i).clone();
    let s = |i| gens.s(i).clone();
    vec![
        a(1),
        a(2),
        a(3),
        s(1),
        s(2),
        s(3),
        bracket(&a(1), &s(2)),
        bracket(&a(2), &s(3)),
        bracket(&a(3), &s(1)),
        bracket(&s(1), &a(2)),
        bracket(&s(2), &a(3)),
        bracket(&s(3), &a(1)),
        bracket(&s(1), &bracket(&s(2), &a(3))),
        bracket(&s(2), &bracket(&s(3), &a(1))),
        bracket(&s(3), &bracket(&s(1), &a(2))),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryTarget {
    /// E_{i,j}, i != j, 1-based.
    OffDiagonal(usize, usize),
    /// E_{k,k} - E_{k+1,k+1}, k in 1..=3.
    DiagonalDifference(usize),
}

impl ElementaryTarget {
    pub fn all() -> Vec<ElementaryTarget> {
        let mut v = Vec::new();
        for i in 1..=4 {
            for j in (1..=4).filter(|&j| j != i) {
                v.push(ElementaryTarget::OffDiagonal(i, j));
            }
        }
        v.extend((1..=3).map(ElementaryTarget::DiagonalDifference));
        v
    }

    pub fn label(self) -> String {
        match self {
            ElementaryTarget::OffDiagonal(i, j) => format!("E{i}{j}"),
            ElementaryTarget::DiagonalDifference(k) => format!("H{k}"),
        }
    }

    pub fn matrix(self) -> Matrix4 {
        match self {
            ElementaryTarget::OffDiagonal(i, j) => Matrix4::elementary(i, j),
            ElementaryTarget::DiagonalDifference(k) => {
                &Matrix4::elementary(k, k) - &Matrix4::elementary(k + 1, k + 1)
            }
        }
    }
}

/// Image of an elementary matrix under the inverse of the generator map,
/// evaluated back in Mat_4. Each off-diagonal E_{i,j} is
/// (4A_a + 2ε1[A*_p,A_a] + 2ε2[A*_q,A_a] + ε3[A*_p,[A*_q,A_a]])/16.
pub fn elementary_from_generators(target: ElementaryTarget) -> Matrix4 {
    elementary_from(&GeneratorSet::standard(), target)
}

pub fn elementary_from(gens: &GeneratorSet, target: ElementaryTarget) -> Matrix4 {
    let (a, p, q, signs): (u8, u8, u8, [i64; 3]) = match target {
        ElementaryTarget::OffDiagonal(i, j) => match (i, j) {
            (1, 2) => (1, 2, 3, [1, 1, 1]),
            (2, 1) => (1, 2, 3, [-1, -1, 1]),
            (3, 4) => (1, 2, 3, [1, -1, -1]),
            (4, 3) => (1, 2, 3, [-1, 1, -1]),
            (1, 3) => (2, 3, 1, [1, 1, 1]),
            (3, 1) => (2, 3, 1, [-1, -1, 1]),
            (4, 2) => (2, 3, 1, [1, -1, -1]),
            (2, 4) => (2, 3, 1, [-1, 1, -1]),
            (1, 4) => (3, 1, 2, [1, 1, 1]),
            (4, 1) => (3, 1, 2, [-1, -1, 1]),
            (2, 3) => (3, 1, 2, [1, -1, -1]),
            (3, 2) => (3, 1, 2, [-1, 1, -1]),
            _ => panic!("no off-diagonal elementary matrix E_{{{i},{j}}}"),
        },
        ElementaryTarget::DiagonalDifference(k) => {
            let (x, y, sign) = match k {
                1 => (2, 3, 1),
                2 => (1, 2, -1),
                3 => (2, 3, -1),
                _ => panic!("diagonal difference index must be 1..3"),
            };
            let sum = &gens.s(x).clone() + &gens.s(y).scale(&int(sign));
            return sum.scale(&frac(1, 2));
        }
    };
    let aa = gens.a(a);
    let bp = bracket(gens.s(p), aa);
    let bq = bracket(gens.s(q), aa);
    let bpq = bracket(gens.s(p), &bq);
    let total = &(&(&aa.scale(&int(4)) + &bp.scale(&int(2 * signs[0])))
        + &bq.scale(&int(2 * signs[1])))
        + &bpq.scale(&int(signs[2]));
    total.scale(&frac(1, 16))
}

/// Υ = (1/2)[[1,1,1,1],[1,1,-1,-1],[1,-1,1,-1],[1,-1,-1,1]].
pub fn upsilon() -> Matrix4 {
    Matrix4::from_ints([[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]])
        .scale(&frac(1, 2))
}

/// τ(M) = Υ M Υ^{-1}; Υ is an involution so Υ^{-1} = Υ.
pub fn tau(m: &Matrix4) -> Matrix4 {
    let u = upsilon();
    &(&u * m) * &u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(kind: GenKind, i: u8) -> Matrix4 {
        generator(GeneratorId { kind, index: i })
    }

    #[test]
    fn generator_examples() {
        assert_eq!(g(GenKind::AStar, 1), Matrix4::diag([1, 1, -1, -1]));
        let a1 = g(GenKind::A, 1);
        assert_eq!(a1.entries[0][1], int(1));
        assert_eq!(a1.entries[2][3], int(1));
        assert!(bracket(&a1, &g(GenKind::AStar, 1)).is_zero());
    }

    #[test]
    fn bracket_examples() {
        let a1 = g(GenKind::A, 1);
        let s2 = g(GenKind::AStar, 2);
        assert!(bracket(&Matrix4::identity(), &a1).is_zero());
        assert_eq!(bracket(&a1, &s2), -&bracket(&s2, &a1));
        assert_eq!(bracket(&a1, &bracket(&a1, &s2)), s2.scale(&int(4)));
    }

    #[test]
    fn presentation_holds() {
        let rep = check_presentation();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(rep.checks.len(), 12 + 3 + 12 + 6 + 15 + 1);
    }

    #[test]
    fn traceless_basis_of_rank_fifteen() {
        let b = basis15();
        assert_eq!(b.len(), 15);
        assert!(b.iter().all(|m| m.trace() == int(0)));
    }

    #[test]
    fn inverse_map_reproduces_elementary_matrices() {
        for t in ElementaryTarget::all() {
            assert_eq!(elementary_from_generators(t), t.matrix(), "{t:?}");
        }
        assert_eq!(
            elementary_from_generators(ElementaryTarget::DiagonalDifference(1)),
            Matrix4::diag([1, -1, 0, 0])
        );
    }

    #[test]
    fn upsilon_involution_and_tau() {
        let u = upsilon();
        assert_eq!(&u * &u, Matrix4::identity());
        for i in 1..=3 {
            let a = g(GenKind::A, i);
            let s = g(GenKind::AStar, i);
            assert_eq!(tau(&a), s);
            assert_eq!(tau(&s), a);
            assert_eq!(&a * &u, &u * &s);
        }
        assert_eq!(tau(&Matrix4::identity()), Matrix4::identity());
    }

    #[test]
    fn tau_respects_brackets_on_basis() {
        let b = basis15();
        for x in &b {
            assert_eq!(tau(&tau(x)), *x);
            for y in &b {
                assert_eq!(tau(&bracket(x, y)), bracket(&tau(x), &tau(y)));
            }
        }
    }

    #[test]
    fn sl2_pairs_independent() {
        for j in 1..=3 {
            for k in (1..=3).filter(|&k| k != j) {
                let six = [
                    g(GenKind::A, j),
                    g(GenKind::A, k),
                    g(GenKind::AStar, j),
                    g(GenKind::AStar, k),
                    bracket(&g(GenKind::A, j), &g(GenKind::AStar, k)),
                    bracket(&g(GenKind::AStar, j), &g(GenKind::A, k)),
                ];
                let flat: Vec<_> = six.iter().map(Matrix4::flatten).collect();
                assert_eq!(linalg::rank(&flat), 6);
            }
        }
    }

    #[test]
    fn corrupted_generator_is_caught() {
        let mut gens = GeneratorSet::standard();
        gens.get_mut(GeneratorId::a(2)).entries[0][2] = int(2);
        let rep = check_presentation_of(&gens);
        let fail = rep.failures().next().expect("corruption must be detected");
        assert!(fail.witness.is_some());
    }
}
