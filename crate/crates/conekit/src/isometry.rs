//! Isometries of a Lorentzian lattice that preserve the positive cone,
//! parabolic transformations fixing a cusp, and orbit enumeration with an
//! explicit completeness certificate.

use crate::error::{Error, Result};
use crate::lattice::LorentzLattice;
use crate::mat::{self, Int, QMat, Rat};
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Rejects matrices that fail M^T G M = G or that swap the two components of
/// the norm-positive set.
pub fn verify_isometry(lat: &LorentzLattice, m: &QMat) -> Result<()> {
    if m.rows() != lat.rank() || m.cols() != lat.rank() {
        return Err(Error::DimensionMismatch {
            expected: lat.rank(),
            got: m.rows().max(m.cols()),
        });
    }
    if &m.transpose().mul(lat.gram()).mul(m) != lat.gram() {
        return Err(Error::FormNotPreserved);
    }
    let image = m.matvec(lat.ample());
    if !lat.ample_pairing(&image).is_positive() {
        return Err(Error::WrongConeComponent);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    m: QMat,
}

impl Isometry {
    pub fn new(lat: &LorentzLattice, m: QMat) -> Result<Self> {
        verify_isometry(lat, &m)?;
        Ok(Isometry { m })
    }

    pub fn from_i64(lat: &LorentzLattice, rows: &[&[i64]]) -> Result<Self> {
        let m = QMat::from_rows(rows.iter().map(|r| mat::rvec(r)).collect());
        Self::new(lat, m)
    }

    pub fn identity(lat: &LorentzLattice) -> Self {
        Isometry {
            m: QMat::identity(lat.rank()),
        }
    }

    pub fn matrix(&self) -> &QMat {
        &self.m
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        self.m.matvec(v)
    }

    /// Exact inverse; always exists since the matrix preserves a
    /// nondegenerate form.
    pub fn inverse(&self) -> Isometry {
        Isometry {
            m: self.m.inverse().expect("isometries are invertible"),
        }
    }

    /// Composition acting as self after other: (self * other)(v) = self(other(v)).
    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            m: self.m.mul(&other.m),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }
}

/// Generating set of a group of cone-preserving isometries. Inverses are
/// adjoined automatically when enumerating.
#[derive(Clone, Debug)]
pub struct GroupGens {
    gens: Vec<Isometry>,
}

impl GroupGens {
    pub fn new(lat: &LorentzLattice, gens: Vec<Isometry>) -> Result<Self> {
        for g in &gens {
            verify_isometry(lat, g.matrix())?;
        }
        Ok(GroupGens { gens })
    }

    pub fn gens(&self) -> &[Isometry] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators and their inverses, labeled for word building. Label k > 0
    /// is gens[k-1], label k < 0 its inverse. Involutions appear once.
    pub fn signed(&self) -> Vec<(i32, Isometry)> {
        let mut out = Vec::new();
        for (i, g) in self.gens.iter().enumerate() {
            out.push((i as i32 + 1, g.clone()));
            let inv = g.inverse();
            if &inv != g {
                out.push((-(i as i32 + 1), inv));
            }
        }
        out
    }
}

/// Group word as a sequence of signed generator labels, leftmost factor
/// applied last. Purely a provenance record.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn prepend(&self, label: i32) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(label);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("g{}", l - 1)
                } else {
                    format!("g{}^-1", -l - 1)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// The transformation fixing an isotropic vector e and translating along its
/// horosphere by x, for x orthogonal to e:
///     y -> y + <y,e> x - (<x,y> + (1/2) <x,x> <y,e>) e.
/// The matrix is rational in general (half-integral when <x,x> is odd).
pub fn parabolic_map(lat: &LorentzLattice, e: &[Rat], x: &[Rat]) -> Result<Isometry> {
    lat.check_dim(e)?;
    lat.check_dim(x)?;
    if mat::is_zero_vec(e) {
        return Err(Error::ZeroVector);
    }
    if !lat.norm(e).is_zero() {
        return Err(Error::NotIsotropic);
    }
    if !lat.pairing(e, x).is_zero() {
        return Err(Error::NotOrthogonal);
    }
    let n = lat.rank();
    let qx = lat.norm(x);
    let half = mat::ratio(1, 2);
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut y = vec![Rat::zero(); n];
        y[j] = Rat::from_integer(mat::int(1));
        let ye = lat.pairing(&y, e);
        let xy = lat.pairing(x, &y);
        let coef = &xy + &half * &qx * &ye;
        let img = mat::vsub(&mat::vadd(&y, &mat::vscale(&ye, x)), &mat::vscale(&coef, e));
        cols.push(img);
    }
    let mut m = QMat::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            m.set(i, j, col[i].clone());
        }
    }
    let iso = Isometry::new(lat, m)?;
    debug_assert_eq!(iso.apply(e), e.to_vec());
    Ok(iso)
}

/// Integral basis x_1, ..., x_{n-2} completing e to a basis (e, x_1, ...) of
/// the sublattice e-perp, for primitive isotropic e. The translations along
/// these directions generate the full parabolic group at the cusp modulo e.
pub fn parabolic_basis(lat: &LorentzLattice, e: &[Int]) -> Result<Vec<Vec<Int>>> {
    let eq = mat::int_to_rat_vec(e);
    lat.check_dim(&eq)?;
    if !lat.norm(&eq).is_zero() {
        return Err(Error::NotIsotropic);
    }
    if mat::is_zero_ivec(e) {
        return Err(Error::ZeroVector);
    }
    if *e != mat::primitive_int(e) {
        return Err(Error::NotPrimitive);
    }
    // integer kernel of the covector <., e>
    let cov = mat::clear_denominators(&lat.covector(&eq));
    let kernel = mat::integer_kernel(&[cov]);
    // coordinates of e in the kernel basis (integral since the kernel is saturated)
    let kmat = QMat::from_int_rows(&kernel).transpose();
    let coords = kmat.solve(&eq).expect("e lies in its own perp");
    let c = mat::to_int_vec(&coords).expect("saturated kernel");
    let c = mat::primitive_int(&c);
    let completion = mat::complete_primitive(&c);
    // drop the first vector (it is e itself), map the rest back
    let mut out = Vec::new();
    for v in completion.iter().skip(1) {
        let vq = mat::int_to_rat_vec(v);
        let w = kmat.matvec(&vq);
        out.push(mat::to_int_vec(&w).expect("integral combination"));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct OrbitPoint {
    pub word: Word,
    pub element: Isometry,
    /// Primitive integral representative of the image ray.
    pub point: Vec<Int>,
    pub cosh_sq: Rat,
}

#[derive(Clone, Debug)]
pub struct OrbitBall {
    pub points: Vec<OrbitPoint>,
    /// True when the breadth-first closure exhausted: every kept point's
    /// neighbors were examined and found either already known or beyond the
    /// bound. False exactly when the element cap stopped the search early.
    pub complete: bool,
    /// Word for a nontrivial group element fixing the basepoint's ray, if one
    /// was encountered during deduplication.
    pub stabilizer_witness: Option<Word>,
}

/// Breadth-first enumeration of { g y : cosh^2 d(y, gy) <= bound }, up to
/// projective equality of images. Output is sorted by distance then by
/// coordinates; the point set does not depend on generator order.
pub fn orbit_ball(
    lat: &LorentzLattice,
    gens: &GroupGens,
    y: &[Rat],
    cosh_sq_bound: &Rat,
    max_elements: usize,
) -> Result<OrbitBall> {
    lat.check_dim(y)?;
    if !lat.in_positive_cone(y) {
        return Err(Error::NotInteriorPoint);
    }
    if max_elements == 0 {
        return Err(Error::Inconsistent("element budget must be positive".into()));
    }
    let signed = gens.signed();
    let base = lat.primitive(y)?;
    let mut known: BTreeMap<Vec<Int>, (Word, Isometry)> = BTreeMap::new();
    known.insert(
        base.clone(),
        (Word::identity(), Isometry::identity(lat)),
    );
    let mut frontier: Vec<Vec<Int>> = vec![base.clone()];
    let mut complete = true;
    let mut stabilizer_witness = None;
    'bfs: while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let (pw, pm) = known.get(p).cloned().expect("frontier points are known");
            for (label, g) in &signed {
                let elem = g.compose(&pm);
                let image = elem.apply(y);
                let canon = lat.primitive(&image)?;
                if let Some((w0, m0)) = known.get(&canon) {
                    if stabilizer_witness.is_none() && m0.matrix() != elem.matrix() {
                        // m0^-1 * elem fixes the ray through y
                        stabilizer_witness =
                            Some(w0.inverse().concat(&pw.prepend(*label)));
                    }
                    continue;
                }
                let c = crate::hyperbolic::cosh_sq_distance(lat, y, &image)?;
                if c > *cosh_sq_bound {
                    continue;
                }
                if known.len() >= max_elements {
                    complete = false;
                    break 'bfs;
                }
                let word = pw.prepend(*label);
                known.insert(canon.clone(), (word, elem));
                next.push(canon);
            }
        }
        frontier = next;
    }
    let mut points: Vec<OrbitPoint> = known
        .into_iter()
        .map(|(point, (word, element))| {
            let image = mat::int_to_rat_vec(&point);
            let cosh_sq = crate::hyperbolic::cosh_sq_distance(lat, y, &image)
                .expect("orbit of an interior point is interior");
            OrbitPoint {
                word,
                element,
                point,
                cosh_sq,
            }
        })
        .collect();
    points.sort_by(|a, b| a.cosh_sq.cmp(&b.cosh_sq).then_with(|| a.point.cmp(&b.point)));
    Ok(OrbitBall {
        points,
        complete,
        stabilizer_witness,
    })
}
