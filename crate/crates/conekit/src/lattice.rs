//! Integral lattices of signature (1, n-1) with a pinned positive cone.
//!
//! The bilinear form is given by an integer Gram matrix. A reference vector of
//! positive self-pairing is stored with the lattice and selects which of the
//! two components of {v : <v,v> > 0} counts as the positive cone. All
//! predicates are exact; inputs are rational coordinate vectors.

use crate::error::{Error, Result};
use crate::mat::{self, QMat, Rat};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct LorentzLattice {
    rank: usize,
    gram: QMat,
    gram_int: Vec<Vec<BigInt>>,
    ample: Vec<Rat>,
}

/// Signature (positive, negative) of a symmetric rational matrix.
/// positive + negative < rank means the form is degenerate.
pub fn signature(gram: &QMat) -> (usize, usize) {
    mat::congruence_signature(gram)
}

impl LorentzLattice {
    pub fn new(gram_rows: Vec<Vec<BigInt>>, ample: Vec<Rat>) -> Result<Self> {
        let rank = gram_rows.len();
        if rank == 0 {
            return Err(Error::Degenerate { rank: 0, found: 0 });
        }
        if gram_rows.iter().any(|r| r.len() != rank) {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: gram_rows.iter().map(|r| r.len()).max().unwrap_or(0),
            });
        }
        let gram = QMat::from_int_rows(&gram_rows);
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let (pos, neg) = signature(&gram);
        if pos + neg < rank {
            return Err(Error::Degenerate {
                rank,
                found: pos + neg,
            });
        }
        if (pos, neg) != (1, rank - 1) {
            return Err(Error::WrongSignature { pos, neg });
        }
        if ample.len() != rank {
            return Err(Error::DimensionMismatch {
                expected: rank,
                got: ample.len(),
            });
        }
        let lat = LorentzLattice {
            rank,
            gram,
            gram_int: gram_rows,
            ample,
        };
        if !lat.norm(&lat.ample).is_positive() {
            return Err(Error::AmpleNotPositive);
        }
        Ok(lat)
    }

    pub fn from_i64(gram: &[&[i64]], ample: &[i64]) -> Result<Self> {
        let rows = gram.iter().map(|r| mat::ivec(r)).collect();
        Self::new(rows, mat::rvec(ample))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    pub fn gram_int(&self) -> &[Vec<BigInt>] {
        &self.gram_int
    }

    pub fn ample(&self) -> &[Rat] {
        &self.ample
    }

    pub fn check_dim(&self, v: &[Rat]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: v.len(),
            });
        }
        Ok(())
    }

    pub fn pairing(&self, u: &[Rat], v: &[Rat]) -> Rat {
        assert_eq!(u.len(), self.rank);
        assert_eq!(v.len(), self.rank);
        mat::dot(u, &self.gram.matvec(v))
    }

    pub fn norm(&self, v: &[Rat]) -> Rat {
        self.pairing(v, v)
    }

    /// The functional x -> <x, v> as a plain coordinate covector.
    pub fn covector(&self, v: &[Rat]) -> Vec<Rat> {
        self.gram.matvec(v)
    }

    pub fn ample_pairing(&self, v: &[Rat]) -> Rat {
        self.pairing(&self.ample, v)
    }

    pub fn signature(&self) -> (usize, usize) {
        (1, self.rank - 1)
    }

    /// Strict interior of the fixed positive cone.
    pub fn in_positive_cone(&self, v: &[Rat]) -> bool {
        v.len() == self.rank
            && self.norm(v).is_positive()
            && self.ample_pairing(v).is_positive()
    }

    /// Closed positive cone minus the origin.
    pub fn in_closed_positive_cone(&self, v: &[Rat]) -> bool {
        v.len() == self.rank
            && !self.norm(v).is_negative()
            && self.ample_pairing(v).is_positive()
    }

    /// Primitive integral representative of a nonzero rational vector, with the
    /// sign chosen so it pairs >= 0 with the reference vector. When that
    /// pairing is zero the first nonzero coordinate is made positive.
    pub fn primitive(&self, v: &[Rat]) -> Result<Vec<BigInt>> {
        self.check_dim(v)?;
        if mat::is_zero_vec(v) {
            return Err(Error::ZeroVector);
        }
        let w = mat::primitive_int(&mat::clear_denominators(v));
        let wq = mat::int_to_rat_vec(&w);
        let a = self.ample_pairing(&wq);
        if a.is_negative() {
            return Ok(mat::ineg(&w));
        }
        if a.is_zero() {
            if let Some(x) = w.iter().find(|x| !x.is_zero()) {
                if x.is_negative() {
                    return Ok(mat::ineg(&w));
                }
            }
        }
        Ok(w)
    }

    /// Primitive representative of a direction known to lie in the closed
    /// positive cone; rejects directions that do not.
    pub fn primitive_ray(&self, v: &[Rat]) -> Result<Vec<BigInt>> {
        let w = self.primitive(v)?;
        let wq = mat::int_to_rat_vec(&w);
        if !self.in_closed_positive_cone(&wq) {
            return Err(Error::OutsidePositiveCone);
        }
        Ok(w)
    }
}
