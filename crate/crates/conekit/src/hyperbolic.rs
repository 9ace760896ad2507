//! The projectivized positive cone as a hyperbolic space.
//!
//! Interior rays are points, rational isotropic rays are cusps. The distance
//! satisfies cosh d(x, y) = <x,y> on norm-1 representatives; we never take the
//! square roots and instead work with cosh^2 d = <x,y>^2 / (<x,x><y,y>), which
//! is rational. Every predicate below is an exact cross-multiplied form of the
//! corresponding metric statement.

use crate::error::{Error, Result};
use crate::lattice::LorentzLattice;
use crate::mat::{self, Int, Rat};
use num_traits::{One, Signed, Zero};

/// A point of the projectivized closed positive cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayPoint {
    rep: Vec<Rat>,
}

impl RayPoint {
    pub fn new(lat: &LorentzLattice, rep: Vec<Rat>) -> Result<Self> {
        lat.check_dim(&rep)?;
        if !lat.in_closed_positive_cone(&rep) {
            return Err(Error::OutsidePositiveCone);
        }
        Ok(RayPoint { rep })
    }

    pub fn rep(&self) -> &[Rat] {
        &self.rep
    }

    pub fn is_interior(&self, lat: &LorentzLattice) -> bool {
        lat.norm(&self.rep).is_positive()
    }

    /// Cusp representative: primitive integral vector on the light cone.
    pub fn is_cusp(&self, lat: &LorentzLattice) -> bool {
        lat.norm(&self.rep).is_zero()
    }
}

/// cosh^2 of the hyperbolic distance between two interior rays.
pub fn cosh_sq_distance(lat: &LorentzLattice, x: &[Rat], y: &[Rat]) -> Result<Rat> {
    lat.check_dim(x)?;
    lat.check_dim(y)?;
    let qx = lat.norm(x);
    let qy = lat.norm(y);
    if !qx.is_positive() || !qy.is_positive() {
        return Err(Error::NotInteriorPoint);
    }
    let p = lat.pairing(x, y);
    Ok(&p * &p / (qx * qy))
}

/// Exact form of the two-cusp product bound: for isotropic e1, e2 in the
/// closed positive cone and interior x,
///     <e1,e2> * <x,x> <= 2 * <x,e1> * <x,e2>,
/// with equality exactly on the geodesic joining the two cusps.
pub fn cone_product_inequality_holds(
    lat: &LorentzLattice,
    e1: &[Rat],
    e2: &[Rat],
    x: &[Rat],
) -> Result<bool> {
    for e in [e1, e2] {
        lat.check_dim(e)?;
        if mat::is_zero_vec(e) {
            return Err(Error::ZeroVector);
        }
        if !lat.norm(e).is_zero() {
            return Err(Error::NotIsotropic);
        }
        if !lat.in_closed_positive_cone(e) {
            return Err(Error::OutsidePositiveCone);
        }
    }
    lat.check_dim(x)?;
    if !lat.in_positive_cone(x) {
        return Err(Error::NotInteriorPoint);
    }
    let lhs = lat.pairing(e1, e2) * lat.norm(x);
    let rhs = mat::rat(2) * lat.pairing(x, e1) * lat.pairing(x, e2);
    Ok(lhs <= rhs)
}

/// Horoball around a rational cusp. At scale c the ball is
/// { x interior : 2 <x,e> <= c sqrt(<x,x>) }, kept in the squared form
/// 4 <x,e>^2 <= c^2 <x,x>. The scale-1 balls at distinct cusps are disjoint.
#[derive(Clone, Debug)]
pub struct Horoball {
    center: Vec<Int>,
    scale: Rat,
}

impl Horoball {
    pub fn new(lat: &LorentzLattice, center: Vec<Int>, scale: Rat) -> Result<Self> {
        let cq = mat::int_to_rat_vec(&center);
        lat.check_dim(&cq)?;
        if mat::is_zero_ivec(&center) {
            return Err(Error::ZeroVector);
        }
        if !lat.norm(&cq).is_zero() {
            return Err(Error::NotIsotropic);
        }
        if !lat.in_closed_positive_cone(&cq) {
            return Err(Error::OutsidePositiveCone);
        }
        if center != mat::primitive_int(&center) {
            return Err(Error::NotPrimitive);
        }
        if !scale.is_positive() {
            return Err(Error::NonPositiveScale);
        }
        Ok(Horoball { center, scale })
    }

    pub fn unit(lat: &LorentzLattice, center: Vec<Int>) -> Result<Self> {
        Self::new(lat, center, Rat::one())
    }

    pub fn center(&self) -> &[Int] {
        &self.center
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }
}

pub fn horoball_contains(lat: &LorentzLattice, ball: &Horoball, x: &[Rat]) -> Result<bool> {
    lat.check_dim(x)?;
    if !lat.in_positive_cone(x) {
        return Err(Error::NotInteriorPoint);
    }
    let e = mat::int_to_rat_vec(&ball.center);
    let p = lat.pairing(x, &e);
    let lhs = mat::rat(4) * &p * &p;
    let rhs = &ball.scale * &ball.scale * lat.norm(x);
    Ok(lhs <= rhs)
}

/// Scale-1 horoballs at distinct rational cusps never meet: distinct primitive
/// isotropic vectors in the closed positive cone pair to an integer >= 1, and
/// membership in both balls would force <e1,e2> <x,x> <= 2 <x,e1> <x,e2>
/// <= <x,x> / 2. The pairing is returned alongside the verdict.
pub fn horoballs_disjoint(lat: &LorentzLattice, b1: &Horoball, b2: &Horoball) -> Result<(bool, Int)> {
    if !b1.scale.is_one() || !b2.scale.is_one() {
        return Err(Error::WrongScale);
    }
    if b1.center == b2.center || b1.center == mat::ineg(&b2.center) {
        return Err(Error::EqualCenters);
    }
    let m = lat.pairing(
        &mat::int_to_rat_vec(&b1.center),
        &mat::int_to_rat_vec(&b2.center),
    );
    debug_assert!(m.is_integer());
    if m < mat::rat(1) {
        // cannot happen for genuinely distinct cusps on the same cone
        return Err(Error::Inconsistent(
            "cusp pairing below 1 for distinct centers".into(),
        ));
    }
    Ok((true, m.to_integer()))
}

/// Perpendicular bisector of two interior points of equal norm, as the exact
/// halfspace of rays no farther from the first point than from the second.
/// In general position only the cross-multiplied comparison exists; when
/// <y,y> = <z,z> the halfspace is linear: { x : <x, z - y> >= 0 }.
#[derive(Clone, Debug)]
pub struct Bisector {
    y: Vec<Rat>,
    z: Vec<Rat>,
}

impl Bisector {
    pub fn new(lat: &LorentzLattice, y: Vec<Rat>, z: Vec<Rat>) -> Result<Self> {
        lat.check_dim(&y)?;
        lat.check_dim(&z)?;
        if !lat.in_positive_cone(&y) || !lat.in_positive_cone(&z) {
            return Err(Error::NotInteriorPoint);
        }
        // proportional points have no bisector
        let d = mat::vsub(
            &mat::vscale(&lat.norm(&z), &y),
            &mat::vscale(&lat.pairing(&y, &z), &z),
        );
        if mat::is_zero_vec(&d) {
            return Err(Error::ProportionalPoints);
        }
        Ok(Bisector { y, z })
    }

    /// True when x (in the closed positive cone) satisfies
    /// d(x, y) <= d(x, z), compared as <x,y>^2 <z,z> <= <x,z>^2 <y,y>.
    pub fn closer_to_first(&self, lat: &LorentzLattice, x: &[Rat]) -> Result<bool> {
        lat.check_dim(x)?;
        if !lat.in_closed_positive_cone(x) {
            return Err(Error::OutsidePositiveCone);
        }
        let py = lat.pairing(x, &self.y);
        let pz = lat.pairing(x, &self.z);
        Ok(&py * &py * lat.norm(&self.z) <= &pz * &pz * lat.norm(&self.y))
    }

    /// Linear functional of the bisector halfspace, available when the two
    /// points share a norm: x -> <x, z - y>, nonnegative on the y side,
    /// strictly positive at y itself. Returned as a coordinate covector.
    pub fn linear_functional(&self, lat: &LorentzLattice) -> Option<Vec<Rat>> {
        if lat.norm(&self.y) != lat.norm(&self.z) {
            return None;
        }
        Some(lat.covector(&mat::vsub(&self.z, &self.y)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::{ivec, rat, ratio, rvec};
    use crate::sampling::Sampler;

    fn l2() -> LorentzLattice {
        LorentzLattice::from_i64(&[&[1, 0], &[0, -1]], &[1, 0]).unwrap()
    }

    fn l3() -> LorentzLattice {
        LorentzLattice::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, -1]], &[1, 0, 0]).unwrap()
    }

    #[test]
    fn cosh_sq_on_worked_pairs() {
        let lat = l2();
        assert_eq!(
            cosh_sq_distance(&lat, &rvec(&[1, 0]), &rvec(&[2, 1])).unwrap(),
            ratio(4, 3)
        );
        let lat3 = l3();
        let y = vec![ratio(3, 2), ratio(1, 2), rat(1)];
        assert_eq!(
            cosh_sq_distance(&lat3, &rvec(&[1, 0, 0]), &y).unwrap(),
            ratio(9, 4)
        );
        // scale invariance and symmetry
        assert_eq!(
            cosh_sq_distance(&lat, &rvec(&[2, 0]), &rvec(&[4, 2])).unwrap(),
            ratio(4, 3)
        );
        assert_eq!(
            cosh_sq_distance(&lat, &rvec(&[2, 1]), &rvec(&[1, 0])).unwrap(),
            ratio(4, 3)
        );
    }

    #[test]
    fn cosh_sq_rejects_boundary_and_is_at_least_one() {
        let lat = l2();
        assert!(matches!(
            cosh_sq_distance(&lat, &rvec(&[1, 1]), &rvec(&[2, 1])),
            Err(Error::NotInteriorPoint)
        ));
        let mut s = Sampler::new(3);
        for _ in 0..100 {
            let x = mat::int_to_rat_vec(&s.interior(&lat));
            let y = mat::int_to_rat_vec(&s.interior(&lat));
            let c = cosh_sq_distance(&lat, &x, &y).unwrap();
            assert!(c >= rat(1));
            if c == rat(1) {
                // equality only for equal rays
                let d = mat::vsub(
                    &mat::vscale(&lat.norm(&y), &x),
                    &mat::vscale(&lat.pairing(&x, &y), &y),
                );
                assert!(mat::is_zero_vec(&d));
            }
        }
    }

    #[test]
    fn product_bound_holds_and_is_tight_on_the_axis() {
        let lat = l2();
        let e1 = rvec(&[1, 1]);
        let e2 = rvec(&[1, -1]);
        assert!(cone_product_inequality_holds(&lat, &e1, &e2, &rvec(&[1, 0])).unwrap());
        // equality case: x = a e1 + b e2
        let x = mat::vadd(&mat::vscale(&rat(3), &e1), &mat::vscale(&rat(5), &e2));
        let lhs = lat.pairing(&e1, &e2) * lat.norm(&x);
        let rhs = rat(2) * lat.pairing(&x, &e1) * lat.pairing(&x, &e2);
        assert_eq!(lhs, rhs);
        assert!(matches!(
            cone_product_inequality_holds(&lat, &rvec(&[2, 1]), &e2, &rvec(&[1, 0])),
            Err(Error::NotIsotropic)
        ));
    }

    #[test]
    fn product_bound_on_random_triples() {
        let lat = l3();
        let seed = rvec(&[1, 1, 0]);
        let mut s = Sampler::new(17);
        for _ in 0..300 {
            let e1 = mat::int_to_rat_vec(&s.isotropic(&lat, &seed));
            let e2 = mat::int_to_rat_vec(&s.isotropic(&lat, &seed));
            let x = mat::int_to_rat_vec(&s.interior(&lat));
            assert!(cone_product_inequality_holds(&lat, &e1, &e2, &x).unwrap());
        }
    }

    #[test]
    fn horoball_membership_squared_form() {
        let lat = l2();
        let ball = Horoball::unit(&lat, ivec(&[1, 1])).unwrap();
        assert!(horoball_contains(&lat, &ball, &rvec(&[3, 2])).unwrap());
        assert!(!horoball_contains(&lat, &ball, &rvec(&[2, 1])).unwrap());
        assert!(!horoball_contains(&lat, &ball, &rvec(&[1, 0])).unwrap());
        // larger scale swallows the basepoint
        let big = Horoball::new(&lat, ivec(&[1, 1]), rat(2)).unwrap();
        assert!(horoball_contains(&lat, &big, &rvec(&[1, 0])).unwrap());
        assert!(matches!(
            Horoball::unit(&lat, ivec(&[2, 2])),
            Err(Error::NotPrimitive)
        ));
        assert!(matches!(
            Horoball::unit(&lat, ivec(&[2, 1])),
            Err(Error::NotIsotropic)
        ));
    }

    #[test]
    fn unit_horoballs_at_distinct_cusps_are_disjoint() {
        let lat = l2();
        let b1 = Horoball::unit(&lat, ivec(&[1, 1])).unwrap();
        let b2 = Horoball::unit(&lat, ivec(&[1, -1])).unwrap();
        let (disjoint, m) = horoballs_disjoint(&lat, &b1, &b2).unwrap();
        assert!(disjoint);
        assert_eq!(m, mat::int(2));
        assert!(matches!(
            horoballs_disjoint(&lat, &b1, &b1),
            Err(Error::EqualCenters)
        ));
        let shrunk = Horoball::new(&lat, ivec(&[1, -1]), ratio(1, 2)).unwrap();
        assert!(matches!(
            horoballs_disjoint(&lat, &b1, &shrunk),
            Err(Error::WrongScale)
        ));
    }

    #[test]
    fn disjointness_verified_pointwise_on_samples() {
        let lat = l3();
        let seed = rvec(&[1, 1, 0]);
        let mut s = Sampler::new(23);
        for _ in 0..60 {
            let e1 = s.isotropic(&lat, &seed);
            let e2 = s.isotropic(&lat, &seed);
            if e1 == e2 {
                continue;
            }
            let b1 = Horoball::unit(&lat, e1).unwrap();
            let b2 = Horoball::unit(&lat, e2).unwrap();
            assert!(horoballs_disjoint(&lat, &b1, &b2).unwrap().0);
            for _ in 0..20 {
                let x = mat::int_to_rat_vec(&s.interior(&lat));
                let in1 = horoball_contains(&lat, &b1, &x).unwrap();
                let in2 = horoball_contains(&lat, &b2, &x).unwrap();
                assert!(!(in1 && in2));
            }
        }
    }

    #[test]
    fn bisector_linear_form_and_sides() {
        let lat = l2();
        let y = rvec(&[2, 1]);
        let z = rvec(&[2, -1]);
        let b = Bisector::new(&lat, y.clone(), z.clone()).unwrap();
        let f = b.linear_functional(&lat).unwrap();
        // functional is <., z - y> = <., (0,-2)>, i.e. the covector (0, 2)
        assert_eq!(f, rvec(&[0, 2]));
        // strictly positive at the first point, negative at the second
        assert!(mat::dot(&f, &y).is_positive());
        assert!(mat::dot(&f, &z).is_negative());
        // the axis point (1,0) is equidistant
        assert!(mat::dot(&f, &rvec(&[1, 0])).is_zero());
        assert!(b.closer_to_first(&lat, &rvec(&[1, 0])).unwrap());
        assert!(b.closer_to_first(&lat, &rvec(&[3, 1])).unwrap());
        assert!(!b.closer_to_first(&lat, &rvec(&[3, -1])).unwrap());
        assert!(matches!(
            Bisector::new(&lat, rvec(&[2, 1]), rvec(&[4, 2])),
            Err(Error::ProportionalPoints)
        ));
    }

    #[test]
    fn cross_multiplied_side_matches_linear_form_on_samples() {
        let lat = l3();
        let mut s = Sampler::new(29);
        for _ in 0..100 {
            let y = mat::int_to_rat_vec(&s.interior(&lat));
            // give z the same norm by reflecting a coordinate
            let mut z = y.clone();
            z[1] = -z[1].clone();
            z[2] = z[2].clone() + rat(0);
            if lat.norm(&z) != lat.norm(&y) {
                continue;
            }
            let Ok(b) = Bisector::new(&lat, y.clone(), z.clone()) else {
                continue;
            };
            let f = b.linear_functional(&lat).unwrap();
            let x = mat::int_to_rat_vec(&s.interior(&lat));
            assert_eq!(
                b.closer_to_first(&lat, &x).unwrap(),
                !mat::dot(&f, &x).is_negative()
            );
        }
    }
}
