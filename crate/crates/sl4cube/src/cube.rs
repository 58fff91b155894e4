//! The hypercube H(N,2), its Bose–Mesner and dual objects at a base vertex,
//! and the subconstituent algebra T with its two orthogonal bases.
//!
//! Vertices are bitmasks: bit k set means coordinate k is −1. Operators on
//! the standard module are dense matrices of i128 numerators over one common
//! denominator, which keeps products of 2^N×2^N matrices cheap while staying
//! exact. Every arithmetic step is overflow-checked.

use crate::exact::{binomial, factorial, frac, int, linalg, pow2, Rational};
use crate::polyspace::Profile;
use crate::report::VerificationReport;
use crate::specialfn::KrawtchoukFamily;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Vertex = u32;

pub fn distance(x: Vertex, y: Vertex) -> u32 {
    (x ^ y).count_ones()
}

/// θ_i = θ*_i = N − 2i.
pub fn theta(n: u32, i: u32) -> i64 {
    n as i64 - 2 * i as i64
}

fn ck_mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b)
        .expect("i128 overflow in exact matrix arithmetic")
}

fn ck_add(a: i128, b: i128) -> i128 {
    a.checked_add(b)
        .expect("i128 overflow in exact matrix arithmetic")
}

fn small(q: &Rational) -> (i128, i128) {
    let n = q.numer().to_i128().expect("scalar too large");
    let d = q.denom().to_i128().expect("scalar too large");
    (n, d)
}

/// Square matrix num/den with integer numerators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    size: usize,
    num: Vec<i128>,
    den: i128,
}

impl QMatrix {
    pub fn zeros(size: usize) -> Self {
        QMatrix {
            size,
            num: vec![0; size * size],
            den: 1,
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_int_fn(size, |i, j| (i == j) as i128)
    }

    pub fn from_int_fn(size: usize, f: impl Fn(usize, usize) -> i128) -> Self {
        let mut num = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                num.push(f(i, j));
            }
        }
        QMatrix { size, num, den: 1 }.normalized()
    }

    /// From row-major rational entries.
    pub fn from_entries(size: usize, entries: &[Rational]) -> Self {
        assert_eq!(entries.len(), size * size);
        let den = entries
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
            .to_i128()
            .expect("denominator too large");
        QMatrix {
            size,
            num: entries
                .iter()
                .map(|q| {
                    let (a, b) = small(q);
                    ck_mul(a, den / b)
                })
                .collect(),
            den,
        }
        .normalized()
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let size = values.len();
        let den = values
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
            .to_i128()
            .expect("denominator too large");
        let mut m = Self::zeros(size);
        m.den = den;
        for (i, q) in values.iter().enumerate() {
            let (a, b) = small(q);
            m.num[i * size + i] = ck_mul(a, den / b);
        }
        m.normalized()
    }

    fn normalized(mut self) -> Self {
        let mut g = self.den;
        for &x in &self.num {
            if g == 1 {
                break;
            }
            if x != 0 {
                g = g.gcd(&x);
            }
        }
        if self.num.iter().all(|&x| x == 0) {
            self.den = 1;
            return self;
        }
        if g != 1 {
            for x in self.num.iter_mut() {
                *x /= g;
            }
            self.den /= g;
        }
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        Rational::new(
            BigInt::from(self.num[i * self.size + j]),
            BigInt::from(self.den),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&x| x == 0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.num.iter().filter(|&&x| x != 0).count()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        let (a, b) = small(q);
        QMatrix {
            size: self.size,
            num: self.num.iter().map(|&x| ck_mul(x, a)).collect(),
            den: ck_mul(self.den, b),
        }
        .normalized()
    }

    fn combine(&self, o: &QMatrix, sign: i128) -> QMatrix {
        assert_eq!(self.size, o.size);
        let l = self.den.lcm(&o.den);
        let (fa, fb) = (l / self.den, ck_mul(sign, l / o.den));
        QMatrix {
            size: self.size,
            num: self
                .num
                .iter()
                .zip(&o.num)
                .map(|(&x, &y)| ck_add(ck_mul(x, fa), ck_mul(y, fb)))
                .collect(),
            den: l,
        }
        .normalized()
    }

    pub fn add(&self, o: &QMatrix) -> QMatrix {
        self.combine(o, 1)
    }

    pub fn sub(&self, o: &QMatrix) -> QMatrix {
        self.combine(o, -1)
    }

    pub fn mul(&self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.size, o.size);
        let n = self.size;
        let rows: Vec<Vec<(usize, i128)>> = (0..n)
            .map(|k| {
                (0..n)
                    .filter_map(|j| {
                        let v = o.num[k * n + j];
                        (v != 0).then_some((j, v))
                    })
                    .collect()
            })
            .collect();
        let mut num = vec![0i128; n * n];
        for i in 0..n {
            let out = &mut num[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.num[i * n + k];
                if a == 0 {
                    continue;
                }
                for &(j, b) in &rows[k] {
                    out[j] = ck_add(out[j], ck_mul(a, b));
                }
            }
        }
        QMatrix {
            size: n,
            num,
            den: ck_mul(self.den, o.den),
        }
        .normalized()
    }

    /// diag(d) · self, without forming the diagonal matrix.
    pub fn scale_rows(&self, d: &[Rational]) -> QMatrix {
        self.scale_lines(d, true)
    }

    /// self · diag(d).
    pub fn scale_cols(&self, d: &[Rational]) -> QMatrix {
        self.scale_lines(d, false)
    }

    fn scale_lines(&self, d: &[Rational], rows: bool) -> QMatrix {
        let n = self.size;
        assert_eq!(d.len(), n);
        let l = d
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
            .to_i128()
            .expect("denominator too large");
        let factors: Vec<i128> = d
            .iter()
            .map(|q| {
                let (a, b) = small(q);
                ck_mul(a, l / b)
            })
            .collect();
        let mut num = self.num.clone();
        for (pos, x) in num.iter_mut().enumerate() {
            if *x != 0 {
                let k = if rows { pos / n } else { pos % n };
                *x = ck_mul(*x, factors[k]);
            }
        }
        QMatrix {
            size: n,
            num,
            den: ck_mul(self.den, l),
        }
        .normalized()
    }

    /// The diagonal entries.
    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.size).map(|i| self.get(i, i)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let n = self.size;
        QMatrix {
            size: n,
            num: (0..n * n).map(|k| self.num[(k % n) * n + k / n]).collect(),
            den: self.den,
        }
    }

    /// Σ_{x,y} B_{xy} C_{xy}; the basis {e_{x,y}} is orthonormal for this form.
    pub fn inner(&self, o: &QMatrix) -> Rational {
        let mut acc: i128 = 0;
        for (&x, &y) in self.num.iter().zip(&o.num) {
            if x != 0 && y != 0 {
                acc = ck_add(acc, ck_mul(x, y));
            }
        }
        Rational::new(
            BigInt::from(acc),
            BigInt::from(self.den) * BigInt::from(o.den),
        )
    }

    pub fn norm_sq(&self) -> Rational {
        self.inner(self)
    }

    pub fn rank(&self) -> usize {
        let n = self.size;
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| int_r(self.num[i * n + j])).collect())
            .collect();
        linalg::rank(&rows)
    }

    pub fn apply(&self, v: &StdVec) -> StdVec {
        let n = self.size;
        let den = Rational::from_integer(BigInt::from(self.den));
        StdVec(
            (0..n)
                .map(|i| {
                    let mut acc = Rational::zero();
                    for j in 0..n {
                        let a = self.num[i * n + j];
                        if a != 0 && !v.0[j].is_zero() {
                            acc += int_r(a) * &v.0[j];
                        }
                    }
                    acc / &den
                })
                .collect(),
        )
    }

    /// All entries flattened row-major, as rationals.
    pub fn entries(&self) -> Vec<Rational> {
        let den = BigInt::from(self.den);
        self.num
            .iter()
            .map(|&x| Rational::new(BigInt::from(x), den.clone()))
            .collect()
    }

    pub fn commutes_with(&self, o: &QMatrix) -> bool {
        self.mul(o) == o.mul(self)
    }

    /// Row-major CSV of exact fractions, one matrix row per line.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.size {
            let cells: Vec<String> = (0..self.size)
                .map(|j| crate::exact::format_rational(&self.get(i, j)))
                .collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }
}

fn int_r(x: i128) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix({}x{}, den {})", self.size, self.size, self.den)
    }
}

/// A vector of the standard module, dense over the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StdVec(pub Vec<Rational>);

impl StdVec {
    pub fn basis(size: usize, x: Vertex) -> Self {
        let mut v = vec![Rational::zero(); size];
        v[x as usize] = Rational::one();
        StdVec(v)
    }

    pub fn inner(&self, o: &StdVec) -> Rational {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    /// Entrywise product u ∘ v.
    pub fn hadamard(&self, o: &StdVec) -> StdVec {
        StdVec(self.0.iter().zip(&o.0).map(|(a, b)| a * b).collect())
    }

    pub fn scale(&self, c: &Rational) -> StdVec {
        StdVec(self.0.iter().map(|a| a * c).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TripleIndex {
    pub h: u32,
    pub i: u32,
    pub j: u32,
}

impl TripleIndex {
    pub const fn new(h: u32, i: u32, j: u32) -> Self {
        TripleIndex { h, i, j }
    }

    /// Bounds, even sum, triangle inequalities and h+i+j ≤ 2N.
    pub fn is_admissible(&self, n: u32) -> bool {
        let (h, i, j) = (self.h, self.i, self.j);
        h <= n
            && i <= n
            && j <= n
            && (h + i + j) % 2 == 0
            && h <= i + j
            && i <= j + h
            && j <= h + i
            && h + i + j <= 2 * n
    }

    /// (h,i,j) = (t+u, u+s, s+t).
    pub fn from_profile(p: Profile) -> Self {
        TripleIndex::new(p.t + p.u, p.u + p.s, p.s + p.t)
    }

    /// ((2N−h−i−j)/2, (i+j−h)/2, (j+h−i)/2, (h+i−j)/2).
    pub fn to_profile(&self, n: u32) -> Option<Profile> {
        if !self.is_admissible(n) {
            return None;
        }
        let (h, i, j) = (self.h, self.i, self.j);
        Some(Profile::new(
            (2 * n - h - i - j) / 2,
            (i + j - h) / 2,
            (j + h - i) / 2,
            (h + i - j) / 2,
        ))
    }
}

impl fmt::Display for TripleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.h, self.i, self.j)
    }
}

/// The admissible triples in lexicographic order.
pub fn enumerate_triples(n: u32) -> Vec<TripleIndex> {
    let mut out = Vec::new();
    for h in 0..=n {
        for i in 0..=n {
            for j in 0..=n {
                let t = TripleIndex::new(h, i, j);
                if t.is_admissible(n) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Largest supported cube dimension.
pub const MAX_N: u32 = 10;

#[derive(Clone, Debug)]
pub struct Hypercube {
    n: u32,
    adjacency: QMatrix,
    idempotents: Vec<QMatrix>,
}

impl Hypercube {
    /// Builds A and the primitive idempotents E_i = Π_{j≠i} (A − θ_j I)/(θ_i − θ_j).
    pub fn new(n: u32) -> Self {
        assert!(
            n <= MAX_N,
            "hypercube dimension {n} is beyond the supported range"
        );
        let size = 1usize << n;
        let adjacency =
            QMatrix::from_int_fn(size, |x, y| (distance(x as u32, y as u32) == 1) as i128);
        let id = QMatrix::identity(size);
        let idempotents = (0..=n)
            .map(|i| {
                let mut e = id.clone();
                for j in (0..=n).filter(|&j| j != i) {
                    let factor = adjacency
                        .sub(&id.scale(&int(theta(n, j))))
                        .scale(&frac(1, theta(n, i) - theta(n, j)));
                    e = e.mul(&factor);
                }
                e
            })
            .collect();
        Hypercube {
            n,
            adjacency,
            idempotents,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        1usize << self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..(1u32 << self.n)
    }

    pub fn adjacency(&self) -> &QMatrix {
        &self.adjacency
    }

    /// Sum over single-coordinate flips.
    pub fn adjacency_apply(&self, v: &StdVec) -> StdVec {
        let mut out = vec![Rational::zero(); self.size()];
        for x in self.vertices() {
            let c = &v.0[x as usize];
            if c.is_zero() {
                continue;
            }
            for k in 0..self.n {
                out[(x ^ (1 << k)) as usize] += c;
            }
        }
        StdVec(out)
    }

    /// A_i: x ↦ Σ of the vertices at distance i.
    pub fn distance_op(&self, i: u32) -> QMatrix {
        QMatrix::from_int_fn(self.size(), |x, y| {
            (distance(x as u32, y as u32) == i) as i128
        })
    }

    pub fn primitive_idempotent(&self, i: u32) -> &QMatrix {
        &self.idempotents[i as usize]
    }

    /// g(A) for a polynomial given lowest degree first.
    pub fn polynomial_in_adjacency(&self, coeffs: &[Rational]) -> QMatrix {
        poly_of(&self.adjacency, coeffs)
    }

    pub fn dual_adjacency(&self, kappa: Vertex) -> QMatrix {
        let d: Vec<Rational> = self
            .vertices()
            .map(|x| int(theta(self.n, distance(x, kappa))))
            .collect();
        QMatrix::diagonal(&d)
    }

    /// E*_i: projection onto the vertices at distance i from κ.
    pub fn dual_idempotent(&self, kappa: Vertex, i: u32) -> QMatrix {
        let d: Vec<Rational> = self
            .vertices()
            .map(|x| int((distance(x, kappa) == i) as i64))
            .collect();
        QMatrix::diagonal(&d)
    }

    /// A*_h = diag(2^N (E_h κ)_x).
    pub fn dual_distance_op(&self, kappa: Vertex, h: u32) -> QMatrix {
        let e = self.primitive_idempotent(h);
        let scale = pow2(self.n as i32);
        let d: Vec<Rational> = self
            .vertices()
            .map(|x| e.get(x as usize, kappa as usize) * &scale)
            .collect();
        QMatrix::diagonal(&d)
    }

    /// |Γ_i(x) ∩ Γ_j(y)| for a pair at distance h, counted directly.
    pub fn intersection_number(&self, h: u32, i: u32, j: u32) -> u64 {
        let x = 0;
        let y = (1u32 << h) - 1;
        self.vertices()
            .filter(|&z| distance(x, z) == i && distance(y, z) == j)
            .count() as u64
    }

    /// E*_i A_h E*_j, built by masking A_h.
    pub fn star_triple_product(&self, kappa: Vertex, t: TripleIndex) -> QMatrix {
        QMatrix::from_int_fn(self.size(), |x, y| {
            let (x, y) = (x as u32, y as u32);
            (distance(x, y) == t.h && distance(x, kappa) == t.i && distance(y, kappa) == t.j)
                as i128
        })
    }

    /// E_i A*_h E_j, with the diagonal factor applied to columns.
    pub fn dual_triple_product(&self, kappa: Vertex, t: TripleIndex) -> QMatrix {
        let d = self.dual_distance_op(kappa, t.h).diagonal_entries();
        self.primitive_idempotent(t.i)
            .scale_cols(&d)
            .mul(self.primitive_idempotent(t.j))
    }

    pub fn t_algebra(&self, kappa: Vertex) -> TAlgebra {
        TAlgebra::new(self, kappa)
    }
}

pub fn poly_of(m: &QMatrix, coeffs: &[Rational]) -> QMatrix {
    let id = QMatrix::identity(m.size());
    let mut acc = QMatrix::zeros(m.size());
    for c in coeffs.iter().rev() {
        acc = acc.mul(m).add(&id.scale(c));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TBasisKind {
    /// E*_i A_h E*_j
    EstarAEstar,
    /// E_i A*_h E_j
    EAstarE,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModuleOp {
    A(u8),
    AStar(u8),
}

/// T = T(κ) with both bases and coordinates relative to each.
#[derive(Clone, Debug)]
pub struct TAlgebra {
    pub n: u32,
    pub kappa: Vertex,
    pub a: QMatrix,
    pub astar: QMatrix,
    triples: Vec<TripleIndex>,
    star_basis: Vec<QMatrix>,
    dual_basis: Vec<QMatrix>,
    dual_norms: Vec<Rational>,
    /// For each matrix cell, the index of the E*AE* element supported there.
    cell: Vec<usize>,
}

impl TAlgebra {
    pub fn new(cube: &Hypercube, kappa: Vertex) -> Self {
        let n = cube.n;
        assert!(
            (kappa as usize) < cube.size(),
            "basepoint {kappa} out of range"
        );
        let triples = enumerate_triples(n);
        let star_basis: Vec<QMatrix> = triples
            .iter()
            .map(|t| cube.star_triple_product(kappa, *t))
            .collect();
        let dual_basis: Vec<QMatrix> = triples
            .iter()
            .map(|t| cube.dual_triple_product(kappa, *t))
            .collect();
        let dual_norms = dual_basis.iter().map(QMatrix::norm_sq).collect();
        let size = cube.size();
        let index: BTreeMap<TripleIndex, usize> =
            triples.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        let mut cell = vec![0; size * size];
        for x in 0..size as u32 {
            for y in 0..size as u32 {
                let t = TripleIndex::new(distance(x, y), distance(x, kappa), distance(y, kappa));
                cell[(x as usize) * size + y as usize] = index[&t];
            }
        }
        TAlgebra {
            n,
            kappa,
            a: cube.adjacency.clone(),
            astar: cube.dual_adjacency(kappa),
            triples,
            star_basis,
            dual_basis,
            dual_norms,
            cell,
        }
    }

    pub fn triples(&self) -> &[TripleIndex] {
        &self.triples
    }

    pub fn dim(&self) -> usize {
        self.triples.len()
    }

    pub fn basis(&self, kind: TBasisKind) -> &[QMatrix] {
        match kind {
            TBasisKind::EstarAEstar => &self.star_basis,
            TBasisKind::EAstarE => &self.dual_basis,
        }
    }

    pub fn basis_element(&self, kind: TBasisKind, t: TripleIndex) -> Option<&QMatrix> {
        let k = self.triples.binary_search(&t).ok()?;
        Some(&self.basis(kind)[k])
    }

    /// Coordinates in the E*AE* basis. The basis elements have disjoint
    /// 0/1 supports, so B lies in their span iff it is constant on each
    /// support cell; the residual is checked exactly.
    pub fn star_coordinates(&self, b: &QMatrix) -> Option<Vec<Rational>> {
        let mut coords: Vec<Option<i128>> = vec![None; self.dim()];
        for (pos, &k) in self.cell.iter().enumerate() {
            let v = b.num[pos];
            match coords[k] {
                None => coords[k] = Some(v),
                Some(c) if c == v => {}
                Some(_) => return None,
            }
        }
        let den = BigInt::from(b.den);
        Some(
            coords
                .into_iter()
                .map(|c| Rational::new(BigInt::from(c.unwrap_or(0)), den.clone()))
                .collect(),
        )
    }

    /// Coordinates in the E A* E basis by orthogonal projection, followed by
    /// an exact residual check.
    pub fn dual_coordinates(&self, b: &QMatrix) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .dual_basis
            .iter()
            .zip(&self.dual_norms)
            .map(|(e, nrm)| b.inner(e) / nrm)
            .collect();
        (self.from_coordinates(TBasisKind::EAstarE, &coords) == *b).then_some(coords)
    }

    pub fn coordinates(&self, kind: TBasisKind, b: &QMatrix) -> Option<Vec<Rational>> {
        match kind {
            TBasisKind::EstarAEstar => self.star_coordinates(b),
            TBasisKind::EAstarE => self.dual_coordinates(b),
        }
    }

    pub fn contains(&self, b: &QMatrix) -> bool {
        self.star_coordinates(b).is_some()
    }

    pub fn from_coordinates(&self, kind: TBasisKind, coords: &[Rational]) -> QMatrix {
        let basis = self.basis(kind);
        let size = self.a.size();
        let mut acc = QMatrix::zeros(size);
        for (c, e) in coords.iter().zip(basis) {
            if !c.is_zero() {
                acc = acc.add(&e.scale(c));
            }
        }
        acc
    }

    /// Dimension of the algebra generated by A and A*, found by closing
    /// span{I} under right multiplication by both generators.
    pub fn generated_dimension(&self) -> Result<usize, String> {
        let size = self.a.size();
        let mut span = linalg::SpanBasis::new();
        let mut queue = vec![QMatrix::identity(size)];
        let start = self
            .star_coordinates(&queue[0])
            .ok_or("identity is outside the basis span")?;
        span.insert(&start);
        while let Some(m) = queue.pop() {
            for g in [&self.a, &self.astar] {
                let w = m.mul(g);
                let c = self.star_coordinates(&w).ok_or_else(|| {
                    "a word in A, A* left the span of the E*AE* basis".to_string()
                })?;
                if span.insert(&c) {
                    queue.push(w);
                }
            }
        }
        Ok(span.dim())
    }

    /// φ = (4A² + 4A*² − (AA* − A*A)²)/8.
    pub fn phi(&self) -> QMatrix {
        let a2 = self.a.mul(&self.a);
        let s2 = self.astar.mul(&self.astar);
        let c = self.a.mul(&self.astar).sub(&self.astar.mul(&self.a));
        a2.scale(&int(4))
            .add(&s2.scale(&int(4)))
            .sub(&c.mul(&c))
            .scale(&frac(1, 8))
    }

    pub fn phi_eigenvalue(&self, ell: u32) -> Rational {
        crate::polyspace::casimir_eigenvalue(self.n, ell)
    }

    /// Lagrange idempotents of φ, certified against its minimal polynomial.
    pub fn phi_idempotents(&self) -> Result<Vec<QMatrix>, String> {
        let phi = self.phi();
        let size = self.a.size();
        let id = QMatrix::identity(size);
        let lambdas: Vec<Rational> = (0..=self.n / 2).map(|l| self.phi_eigenvalue(l)).collect();
        let minimal = lambdas
            .iter()
            .fold(id.clone(), |acc, l| acc.mul(&phi.sub(&id.scale(l))));
        if !minimal.is_zero() {
            return Err("φ is not annihilated by Π(φ − λ_ℓ)".into());
        }
        let mut out = Vec::new();
        for (l, lam) in lambdas.iter().enumerate() {
            let mut e = id.clone();
            for (m, mu) in lambdas.iter().enumerate() {
                if m != l {
                    e = e
                        .mul(&phi.sub(&id.scale(mu)))
                        .scale(&(Rational::one() / (lam - mu)));
                }
            }
            if e.is_zero() {
                return Err(format!("eigenvalue {lam} of φ has no eigenspace"));
            }
            out.push(e);
        }
        Ok(out)
    }

    /// Bases of the ideals φ_ℓ T, as coordinate vectors and matrices.
    pub fn wedderburn(&self) -> Result<Vec<WedderburnIdeal>, String> {
        let idems = self.phi_idempotents()?;
        let mut out = Vec::new();
        for (ell, e) in idems.into_iter().enumerate() {
            let mut span = linalg::SpanBasis::new();
            let mut basis = Vec::new();
            for b in &self.star_basis {
                let m = e.mul(b);
                let c = self
                    .star_coordinates(&m)
                    .ok_or_else(|| format!("φ_{ell} T is not inside T"))?;
                if span.insert(&c) {
                    basis.push(m);
                }
            }
            out.push(WedderburnIdeal {
                ell: ell as u32,
                eigenvalue: self.phi_eigenvalue(ell as u32),
                idempotent: e,
                basis,
                span,
            });
        }
        Ok(out)
    }

    /// The operator 𝒜^(k) or 𝒜*^(k), diagonal in one of the bases.
    pub fn module_op(&self, op: ModuleOp, b: &QMatrix) -> Option<QMatrix> {
        let n = self.n;
        let (kind, factor): (TBasisKind, Box<dyn Fn(&TripleIndex) -> i64>) = match op {
            ModuleOp::A(k) => (
                TBasisKind::EAstarE,
                Box::new(move |t: &TripleIndex| theta(n, [t.h, t.i, t.j][k as usize - 1])),
            ),
            ModuleOp::AStar(k) => (
                TBasisKind::EstarAEstar,
                Box::new(move |t: &TripleIndex| theta(n, [t.h, t.j, t.i][k as usize - 1])),
            ),
        };
        let coords = self.coordinates(kind, b)?;
        let scaled: Vec<Rational> = coords
            .iter()
            .zip(&self.triples)
            .map(|(c, t)| c * int(factor(t)))
            .collect();
        Some(self.from_coordinates(kind, &scaled))
    }

    pub fn dagger(&self, b: &QMatrix) -> QMatrix {
        b.transpose()
    }

    /// S: E_i A*_h E_j ↦ E*_j A_h E*_i, extended linearly.
    pub fn s_map(&self, b: &QMatrix) -> Option<QMatrix> {
        let coords = self.dual_coordinates(b)?;
        let index: BTreeMap<TripleIndex, usize> = self
            .triples
            .iter()
            .enumerate()
            .map(|(k, t)| (*t, k))
            .collect();
        let mut star = vec![Rational::zero(); self.dim()];
        for (t, c) in self.triples.iter().zip(coords) {
            star[index[&TripleIndex::new(t.h, t.j, t.i)]] = c;
        }
        Some(self.from_coordinates(TBasisKind::EstarAEstar, &star))
    }
}

#[derive(Clone, Debug)]
pub struct WedderburnIdeal {
    pub ell: u32,
    pub eigenvalue: Rational,
    pub idempotent: QMatrix,
    pub basis: Vec<QMatrix>,
    /// Span of the basis in E*AE* coordinates.
    pub span: linalg::SpanBasis,
}

/// Checks of the Bose–Mesner side: E_i, distance operators, dual operators.
pub fn check_cube(cube: &Hypercube, kappa: Vertex, fam: &KrawtchoukFamily) -> VerificationReport {
    let n = cube.n;
    let size = cube.size();
    let mut rep = VerificationReport::new();
    let nn = Some(n);
    let id = QMatrix::identity(size);

    let mut bad = None;
    let mut total = QMatrix::zeros(size);
    for i in 0..=n {
        let ei = cube.primitive_idempotent(i);
        total = total.add(ei);
        for j in 0..=n {
            let prod = ei.mul(cube.primitive_idempotent(j));
            let want = if i == j {
                ei.clone()
            } else {
                QMatrix::zeros(size)
            };
            if prod != want {
                bad = Some(format!("E_{i} E_{j} wrong"));
            }
        }
        let r = ei.rank();
        let m = binomial(n as i64, i as i64);
        if int(r as i64) != m {
            bad = Some(format!("rank E_{i} = {r}, expected {m}"));
        }
        if ei.transpose() != *ei {
            bad = Some(format!("E_{i} not symmetric"));
        }
    }
    if total != id {
        bad = Some("Σ E_i != I".into());
    }
    rep.record(
        format!("cube.idempotents.N{n}"),
        "E_iE_j = δ_ij E_i, Σ E_i = I, rank E_i = C(N,i)",
        nn,
        bad.map_or(Ok(()), Err),
    );

    let recon = (0..=n).fold(QMatrix::zeros(size), |acc, i| {
        acc.add(&cube.primitive_idempotent(i).scale(&int(theta(n, i))))
    });
    rep.check(
        format!("cube.spectral.N{n}"),
        "A = Σ θ_i E_i",
        nn,
        recon == *cube.adjacency(),
        || "reconstruction differs from A".into(),
    );

    let mut bad = None;
    let mut sum = QMatrix::zeros(size);
    for i in 0..=n {
        let ai = cube.distance_op(i);
        sum = sum.add(&ai);
        let via = cube
            .polynomial_in_adjacency(fam.poly(i))
            .scale(&binomial(n as i64, i as i64));
        if via != ai {
            bad = Some(format!("A_{i} != C(N,{i}) f_{i}(A)"));
            break;
        }
    }
    rep.record(
        format!("cube.distance_ops.N{n}"),
        "A_i = C(N,i) f_i(A)",
        nn,
        bad.map_or(Ok(()), Err),
    );
    rep.check(
        format!("cube.distance_sum.N{n}"),
        "Σ A_i = J",
        nn,
        sum == QMatrix::from_int_fn(size, |_, _| 1),
        || "distance operators do not sum to J".into(),
    );

    let astar = cube.dual_adjacency(kappa);
    let mut bad = None;
    let mut recon = QMatrix::zeros(size);
    for i in 0..=n {
        let esi = cube.dual_idempotent(kappa, i);
        recon = recon.add(&esi.scale(&int(theta(n, i))));
        let ash = cube.dual_distance_op(kappa, i);
        let via = poly_of(&astar, fam.poly(i)).scale(&binomial(n as i64, i as i64));
        if via != ash {
            bad = Some(format!("A*_{i} != C(N,{i}) f_{i}(A*)"));
            break;
        }
        let e_kappa = cube
            .primitive_idempotent(i)
            .apply(&StdVec::basis(size, kappa))
            .scale(&pow2(n as i32));
        for x in cube.vertices() {
            let v = StdVec::basis(size, x);
            if ash.apply(&v) != e_kappa.hadamard(&v) {
                bad = Some(format!("A*_{i} v != 2^N E_{i}κ ∘ v at vertex {x}"));
                break;
            }
        }
        let expect_dim = binomial(n as i64, i as i64);
        if int(esi.rank() as i64) != expect_dim {
            bad = Some(format!("rank E*_{i} wrong"));
        }
    }
    if recon != astar {
        bad = Some("A* != Σ θ*_i E*_i".into());
    }
    rep.record(
        format!("cube.dual_ops.N{n}"),
        "A*_i = C(N,i) f_i(A*), A*_h v = 2^N E_hκ ∘ v, A* = Σ θ*_i E*_i",
        nn,
        bad.map_or(Ok(()), Err),
    );

    let a = cube.adjacency();
    let c = a.mul(&astar).sub(&astar.mul(a));
    let ok = a.mul(&c).sub(&c.mul(a)) == astar.scale(&int(4))
        && astar.mul(&c).sub(&c.mul(&astar)) == a.scale(&int(-4));
    rep.check(
        format!("cube.tridiagonal.N{n}"),
        "[A,[A,A*]] = 4A*, [A*,[A*,A]] = 4A",
        nn,
        ok,
        || "tridiagonal relations fail".into(),
    );

    let mut bad = None;
    for t in enumerate_triples(n) {
        let p = t.to_profile(n).unwrap();
        let want = factorial(n) / p.weight();
        let (h, i, j) = (t.h, t.i, t.j);
        let vals = [
            binomial(n as i64, h as i64) * int(cube.intersection_number(h, i, j) as i64),
            binomial(n as i64, i as i64) * int(cube.intersection_number(i, j, h) as i64),
            binomial(n as i64, j as i64) * int(cube.intersection_number(j, h, i) as i64),
        ];
        if vals.iter().any(|v| *v != want) {
            bad = Some(format!("k p at {t}: {vals:?} vs {want}"));
            break;
        }
    }
    rep.record(
        format!("cube.intersection.N{n}"),
        "k_h p^h_ij = k_i p^i_jh = k_j p^j_hi = N!/(r!s!t!u!)",
        nn,
        bad.map_or(Ok(()), Err),
    );
    rep
}

/// Checks of T: both bases, dimension, module operators, φ and ideals, S.
pub fn check_t_algebra(t: &TAlgebra) -> VerificationReport {
    let n = t.n;
    let nn = Some(n);
    let mut rep = VerificationReport::new();
    let size = t.a.size();
    let cube_dim = crate::polyspace::dim_p(n);

    rep.check(
        format!("t.triples.N{n}"),
        "|𝒫''_N| = C(N+3,3)",
        nn,
        t.dim() == cube_dim,
        || format!("{} triples", t.dim()),
    );

    match t.generated_dimension() {
        Ok(d) => rep.check(
            format!("t.dim.N{n}"),
            "dim T = C(N+3,3)",
            nn,
            d == cube_dim,
            || format!("dim T = {d}"),
        ),
        Err(e) => rep.record(format!("t.dim.N{n}"), "dim T = C(N+3,3)", nn, Err(e)),
    }

    rep.record(
        format!("t.bases.N{n}"),
        "E*_iA_hE*_j and E_iA*_hE_j are nonzero exactly on 𝒫''_N and orthogonal",
        nn,
        check_bases(t),
    );

    let mut bad = None;
    for (k, b) in t.basis(TBasisKind::EAstarE).iter().enumerate() {
        let checks = [
            (ModuleOp::A(2), t.a.mul(b)),
            (ModuleOp::A(3), b.mul(&t.a)),
            (ModuleOp::AStar(2), b.mul(&t.astar)),
            (ModuleOp::AStar(3), t.astar.mul(b)),
        ];
        for (op, want) in checks {
            if t.module_op(op, b).as_ref() != Some(&want) {
                bad = Some(format!("{op:?} on basis element {}", t.triples[k]));
            }
        }
    }
    rep.record(
        format!("t.module_ops.N{n}"),
        "𝒜^(2)B = AB, 𝒜^(3)B = BA, 𝒜*^(2)B = BA*, 𝒜*^(3)B = A*B",
        nn,
        bad.map_or(Ok(()), Err),
    );

    let phi = t.phi();
    rep.check(
        format!("t.phi_central.N{n}"),
        "φ commutes with A and A*",
        nn,
        phi.commutes_with(&t.a) && phi.commutes_with(&t.astar) && t.contains(&phi),
        || "φ is not central in T".into(),
    );

    match t.wedderburn() {
        Err(e) => rep.record(format!("t.wedderburn.N{n}"), "T = ⊕ φ_ℓ T", nn, Err(e)),
        Ok(ideals) => {
            let mut bad = None;
            let id = QMatrix::identity(size);
            let total = ideals
                .iter()
                .fold(QMatrix::zeros(size), |acc, w| acc.add(&w.idempotent));
            if total != id {
                bad = Some("Σ φ_ℓ != I".to_string());
            }
            for w in &ideals {
                let m = (n - 2 * w.ell + 1) as usize;
                if w.basis.len() != m * m {
                    bad = Some(format!(
                        "dim φ_{} T = {}, expected {}",
                        w.ell,
                        w.basis.len(),
                        m * m
                    ));
                }
                if phi.mul(&w.idempotent) != w.idempotent.scale(&w.eigenvalue) {
                    bad = Some(format!("φ φ_{} != λ φ_{}", w.ell, w.ell));
                }
                for v in &ideals {
                    let prod = w.idempotent.mul(&v.idempotent);
                    let want = if w.ell == v.ell {
                        w.idempotent.clone()
                    } else {
                        QMatrix::zeros(size)
                    };
                    if prod != want {
                        bad = Some(format!("φ_{} φ_{} wrong", w.ell, v.ell));
                    }
                    if v.ell > w.ell {
                        for x in &w.basis {
                            if let Some(y) = v.basis.iter().find(|y| !x.inner(y).is_zero()) {
                                let _ = y;
                                bad =
                                    Some(format!("φ_{} T not orthogonal to φ_{} T", w.ell, v.ell));
                            }
                        }
                    }
                }
                if !(w.idempotent.commutes_with(&t.a) && w.idempotent.commutes_with(&t.astar)) {
                    bad = Some(format!("φ_{} not central", w.ell));
                }
            }
            let sum: usize = ideals.iter().map(|w| w.basis.len()).sum();
            if sum != cube_dim {
                bad = Some(format!("ideal dimensions sum to {sum}"));
            }
            rep.record(
                format!("t.wedderburn.N{n}"),
                "φ_ℓ T has dimension (N-2ℓ+1)², φ acts as (N-2ℓ)(N-2ℓ+2)/2, sum orthogonal and direct",
                nn,
                bad.map_or(Ok(()), Err),
            );
        }
    }

    let mut bad = None;
    for (k, b) in t.basis(TBasisKind::EAstarE).iter().enumerate() {
        let tr = t.triples[k];
        let want = t
            .basis_element(TBasisKind::EstarAEstar, TripleIndex::new(tr.h, tr.j, tr.i))
            .unwrap();
        let s = t.s_map(b);
        if s.as_ref() != Some(want) {
            bad = Some(format!("S(E_iA*_hE_j) at {tr}"));
            break;
        }
        if t.s_map(want).as_ref() != Some(b) {
            bad = Some(format!("S(E*_jA_hE*_i) at {tr}"));
            break;
        }
        if t.dagger(b)
            != t.basis_element(TBasisKind::EAstarE, TripleIndex::new(tr.h, tr.j, tr.i))
                .unwrap()
                .clone()
        {
            bad = Some(format!("dagger(E_iA*_hE_j) at {tr}"));
            break;
        }
    }
    rep.record(
        format!("t.s_and_dagger.N{n}"),
        "S swaps E_iA*_hE_j and E*_jA_hE*_i; † sends E_iA*_hE_j to E_jA*_hE_i",
        nn,
        bad.map_or(Ok(()), Err),
    );
    rep
}

fn check_bases(t: &TAlgebra) -> Result<(), String> {
    let n = t.n;
    let cube = Hypercube::new(n);
    let mut nonzero = [0usize; 2];
    for h in 0..=n {
        for i in 0..=n {
            for j in 0..=n {
                let tr = TripleIndex::new(h, i, j);
                let b1 = cube.star_triple_product(t.kappa, tr);
                let b2 = cube.dual_triple_product(t.kappa, tr);
                for (k, b) in [b1, b2].iter().enumerate() {
                    if b.is_zero() == tr.is_admissible(n) {
                        return Err(format!("basis {k} element at {tr}: zero={}", b.is_zero()));
                    }
                    if !b.is_zero() {
                        nonzero[k] += 1;
                        let want = factorial(n) / tr.to_profile(n).unwrap().weight();
                        if b.norm_sq() != want {
                            return Err(format!(
                                "‖basis {k} at {tr}‖² = {} vs {want}",
                                b.norm_sq()
                            ));
                        }
                    }
                }
            }
        }
    }
    if nonzero != [t.dim(), t.dim()] {
        return Err(format!("nonzero counts {nonzero:?}"));
    }
    for kind in [TBasisKind::EstarAEstar, TBasisKind::EAstarE] {
        let basis = t.basis(kind);
        for (a, x) in basis.iter().enumerate() {
            for y in &basis[a + 1..] {
                if !x.inner(y).is_zero() {
                    return Err(format!("{kind:?} not orthogonal"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specialfn::krawtchouk;

    #[test]
    fn adjacency_examples() {
        let c1 = Hypercube::new(1);
        assert_eq!(
            c1.adjacency_apply(&StdVec::basis(2, 0)),
            StdVec::basis(2, 1)
        );
        let c2 = Hypercube::new(2);
        let img = c2.adjacency_apply(&StdVec::basis(4, 0));
        assert_eq!(img, StdVec(vec![int(0), int(1), int(1), int(0)]));
        assert_eq!(c2.adjacency().transpose(), *c2.adjacency());
        let v = StdVec(vec![int(1), int(2), int(-3), frac(1, 2)]);
        assert_eq!(c2.adjacency().apply(&v), c2.adjacency_apply(&v));
    }

    #[test]
    fn distance_examples() {
        let c = Hypercube::new(2);
        assert_eq!(c.distance_op(0), QMatrix::identity(4));
        let a = c.adjacency();
        let a2 = a.mul(a).scale(&frac(1, 2)).sub(&QMatrix::identity(4));
        assert_eq!(c.distance_op(2), a2);
    }

    #[test]
    fn idempotent_examples() {
        let c = Hypercube::new(1);
        let e0 = c.adjacency().add(&QMatrix::identity(2)).scale(&frac(1, 2));
        assert_eq!(*c.primitive_idempotent(0), e0);
        assert_eq!(Hypercube::new(3).primitive_idempotent(1).rank(), 3);
    }

    #[test]
    fn dual_examples() {
        let c = Hypercube::new(2);
        assert_eq!(c.dual_idempotent(0, 0).get(0, 0), int(1));
        assert_eq!(c.dual_idempotent(0, 0).nonzero_count(), 1);
        // A*_1 at κ is θ*_0 = 2: E_1 has diagonal 2/4.
        let e1 = c.primitive_idempotent(1);
        assert_eq!(e1.get(0, 0), frac(1, 2));
        assert_eq!(c.dual_distance_op(0, 1).get(0, 0), int(2));
    }

    #[test]
    fn triples_n1() {
        assert_eq!(
            enumerate_triples(1),
            vec![
                TripleIndex::new(0, 0, 0),
                TripleIndex::new(0, 1, 1),
                TripleIndex::new(1, 0, 1),
                TripleIndex::new(1, 1, 0)
            ]
        );
        assert!(!TripleIndex::new(1, 0, 0).is_admissible(3));
        for n in 0..6 {
            for p in crate::polyspace::enumerate_profiles(n) {
                let t = TripleIndex::from_profile(p);
                assert!(t.is_admissible(n));
                assert_eq!(t.to_profile(n), Some(p));
            }
        }
    }

    #[test]
    fn cube_checks_small() {
        for n in 0..=3 {
            let c = Hypercube::new(n);
            let rep = check_cube(&c, 0, &krawtchouk(n));
            assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn t_checks_small() {
        for n in 0..=3 {
            let c = Hypercube::new(n);
            let rep = check_t_algebra(&c.t_algebra(0));
            assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn module_op_examples() {
        let t = Hypercube::new(1).t_algebra(0);
        let b = t
            .basis_element(TBasisKind::EAstarE, TripleIndex::new(0, 0, 0))
            .unwrap();
        assert_eq!(t.module_op(ModuleOp::A(2), b).unwrap(), *b);
        let b = t
            .basis_element(TBasisKind::EstarAEstar, TripleIndex::new(1, 0, 1))
            .unwrap();
        assert_eq!(
            t.module_op(ModuleOp::AStar(1), b).unwrap(),
            b.scale(&int(-1))
        );
    }

    #[test]
    fn wedderburn_examples() {
        let t = Hypercube::new(2).t_algebra(0);
        let w = t.wedderburn().unwrap();
        let shape: Vec<(u32, Rational, usize)> = w
            .iter()
            .map(|x| (x.ell, x.eigenvalue.clone(), x.basis.len()))
            .collect();
        assert_eq!(shape, vec![(0, int(4), 9), (1, int(0), 1)]);
        let t = Hypercube::new(4).t_algebra(0);
        let dims: Vec<usize> = t
            .wedderburn()
            .unwrap()
            .iter()
            .map(|x| x.basis.len())
            .collect();
        assert_eq!(dims, vec![25, 9, 1]);
    }

    #[test]
    fn s_is_antiautomorphism() {
        let t = Hypercube::new(2).t_algebra(0);
        let x = t.a.mul(&t.astar).add(&t.a);
        let y = t.astar.mul(&t.a).mul(&t.astar).sub(&t.astar);
        let sxy = t.s_map(&x.mul(&y)).unwrap();
        let sysx = t.s_map(&y).unwrap().mul(&t.s_map(&x).unwrap());
        assert_eq!(sxy, sysx);
        assert_eq!(t.s_map(&t.s_map(&x).unwrap()).unwrap(), x);
        assert_eq!(t.dagger(&t.a), t.a);
    }

    #[test]
    fn basepoint_independence() {
        let c = Hypercube::new(3);
        for kappa in [0, 5] {
            let t = c.t_algebra(kappa);
            assert_eq!(t.generated_dimension().unwrap(), 20);
            let dims: Vec<usize> = t
                .wedderburn()
                .unwrap()
                .iter()
                .map(|x| x.basis.len())
                .collect();
            assert_eq!(dims, vec![16, 4]);
        }
    }

    #[test]
    fn csv_dump() {
        let c = Hypercube::new(1);
        assert_eq!(c.primitive_idempotent(1).to_csv(), "1/2,-1/2\n-1/2,1/2\n");
    }
}
