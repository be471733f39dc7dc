//! Exact arithmetic for every coefficient domain the constructors use:
//! small prime fields, their quadratic extensions, the ring Z/4Z, the
//! rationals, and the rationals extended by the golden ratio.
//!
//! Finite-ring elements are packed into a single byte; a quadratic
//! extension element `a + b·x` is stored as `a + b*p` where `p` is the
//! characteristic. Rational and golden-ratio elements carry a pair of
//! arbitrary-precision rationals `(a, b)` meaning `a + b·phi` (with `b = 0`
//! over the plain rationals).

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::{Error, Result};

/// Tags for the supported coefficient rings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RingTag {
    F2,
    F3,
    F5,
    F7,
    F4,
    F9,
    F25,
    F49,
    Z4,
    Q,
    Qphi,
}

impl RingTag {
    pub const ALL: [RingTag; 11] = [
        RingTag::F2,
        RingTag::F3,
        RingTag::F5,
        RingTag::F7,
        RingTag::F4,
        RingTag::F9,
        RingTag::F25,
        RingTag::F49,
        RingTag::Z4,
        RingTag::Q,
        RingTag::Qphi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RingTag::F2 => "F2",
            RingTag::F3 => "F3",
            RingTag::F5 => "F5",
            RingTag::F7 => "F7",
            RingTag::F4 => "F4",
            RingTag::F9 => "F9",
            RingTag::F25 => "F25",
            RingTag::F49 => "F49",
            RingTag::Z4 => "Z4",
            RingTag::Q => "Q",
            RingTag::Qphi => "Qphi",
        }
    }

    pub fn parse(s: &str) -> Result<RingTag> {
        RingTag::ALL
            .iter()
            .copied()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown ring tag `{s}`")))
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact pair `a + b·phi`; `b` stays zero over the plain rationals.
pub type BigPair = (BigRational, BigRational);

/// A ring element in canonical form.
///
/// Residues are reduced, fractions are in lowest terms with positive
/// denominator (maintained by `BigRational` itself), extension components
/// are reduced in the base field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Elem {
    /// Packed element of a finite ring.
    Fin(u8),
    /// `a + b·phi` over Q or Qphi.
    Big(Box<BigPair>),
}

impl Elem {
    pub fn big(a: BigRational, b: BigRational) -> Elem {
        Elem::Big(Box::new((a, b)))
    }

    pub fn from_pair(a: i64, b: i64) -> Elem {
        Elem::big(
            BigRational::from_integer(BigInt::from(a)),
            BigRational::from_integer(BigInt::from(b)),
        )
    }
}

/// Arithmetic mode for the byte-packed finite rings.
#[derive(Clone, Copy, Debug)]
pub(crate) enum FinKind {
    /// Prime field of order `p`, or Z/4Z with `p = 4` (non-field).
    Mod { m: u8 },
    /// Quadratic extension of F_p with `x^2 = c1*x + c0`.
    Ext { p: u8, c0: u8, c1: u8 },
}

/// A coefficient ring. Cheap to copy; all state is the tag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    tag: RingTag,
}

/// Builds the ring for a tag.
pub fn ring_make(tag: RingTag) -> Ring {
    Ring { tag }
}

impl Ring {
    pub fn tag(&self) -> RingTag {
        self.tag
    }

    /// Additive order of 1 (0 for the characteristic-zero rings).
    pub fn characteristic(&self) -> u32 {
        match self.tag {
            RingTag::F2 | RingTag::F4 => 2,
            RingTag::F3 | RingTag::F9 => 3,
            RingTag::F5 | RingTag::F25 => 5,
            RingTag::F7 | RingTag::F49 => 7,
            RingTag::Z4 => 4,
            RingTag::Q | RingTag::Qphi => 0,
        }
    }

    pub fn cardinality(&self) -> Option<u64> {
        match self.tag {
            RingTag::F2 => Some(2),
            RingTag::F3 => Some(3),
            RingTag::F4 | RingTag::Z4 => Some(4),
            RingTag::F5 => Some(5),
            RingTag::F7 => Some(7),
            RingTag::F9 => Some(9),
            RingTag::F25 => Some(25),
            RingTag::F49 => Some(49),
            RingTag::Q | RingTag::Qphi => None,
        }
    }

    pub fn is_field(&self) -> bool {
        self.tag != RingTag::Z4
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    /// Prime subfield characteristic for finite rings (4 for Z4 by convention).
    pub(crate) fn fin_kind(&self) -> Option<FinKind> {
        match self.tag {
            RingTag::F2 => Some(FinKind::Mod { m: 2 }),
            RingTag::F3 => Some(FinKind::Mod { m: 3 }),
            RingTag::F5 => Some(FinKind::Mod { m: 5 }),
            RingTag::F7 => Some(FinKind::Mod { m: 7 }),
            RingTag::Z4 => Some(FinKind::Mod { m: 4 }),
            // Fixed defining polynomials: smallest-coefficient irreducibles.
            RingTag::F4 => Some(FinKind::Ext { p: 2, c0: 1, c1: 1 }), // x^2 = x + 1
            RingTag::F9 => Some(FinKind::Ext { p: 3, c0: 2, c1: 0 }), // x^2 = -1
            RingTag::F25 => Some(FinKind::Ext { p: 5, c0: 2, c1: 0 }), // x^2 = 2
            RingTag::F49 => Some(FinKind::Ext { p: 7, c0: 3, c1: 0 }), // x^2 = 3
            RingTag::Q | RingTag::Qphi => None,
        }
    }

    /// The prime field (or Q) underlying this ring, for scalar restriction.
    pub fn base_ring(&self) -> Ring {
        let tag = match self.tag {
            RingTag::F4 => RingTag::F2,
            RingTag::F9 => RingTag::F3,
            RingTag::F25 => RingTag::F5,
            RingTag::F49 => RingTag::F7,
            RingTag::Qphi => RingTag::Q,
            t => t,
        };
        ring_make(tag)
    }

    pub fn is_quadratic_extension(&self) -> bool {
        matches!(
            self.tag,
            RingTag::F4 | RingTag::F9 | RingTag::F25 | RingTag::F49 | RingTag::Qphi
        )
    }

    pub fn zero(&self) -> Elem {
        match self.fin_kind() {
            Some(_) => Elem::Fin(0),
            None => Elem::big(BigRational::zero(), BigRational::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        match self.fin_kind() {
            Some(_) => Elem::Fin(1),
            None => Elem::big(BigRational::one(), BigRational::zero()),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        *a == self.zero()
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    /// Image of the integer `n` under the unique map from Z.
    pub fn int(&self, n: i64) -> Elem {
        match self.fin_kind() {
            Some(FinKind::Mod { m }) => Elem::Fin((n.rem_euclid(m as i64)) as u8),
            Some(FinKind::Ext { p, .. }) => Elem::Fin((n.rem_euclid(p as i64)) as u8),
            None => Elem::big(BigRational::from_integer(BigInt::from(n)), BigRational::zero()),
        }
    }

    fn expect_fin(&self, a: &Elem) -> u8 {
        match a {
            Elem::Fin(v) => {
                debug_assert!((*v as u64) < self.cardinality().unwrap());
                *v
            }
            Elem::Big(_) => panic!("rational element used in finite ring {}", self.tag),
        }
    }

    fn expect_big<'a>(&self, a: &'a Elem) -> &'a BigPair {
        match a {
            Elem::Big(p) => p,
            Elem::Fin(_) => panic!("finite element used in ring {}", self.tag),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match self.fin_kind() {
            Some(k) => Elem::Fin(fin_add(k, self.expect_fin(a), self.expect_fin(b))),
            None => {
                let (a0, a1) = self.expect_big(a);
                let (b0, b1) = self.expect_big(b);
                Elem::big(a0 + b0, a1 + b1)
            }
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match self.fin_kind() {
            Some(k) => Elem::Fin(fin_neg(k, self.expect_fin(a))),
            None => {
                let (a0, a1) = self.expect_big(a);
                Elem::big(-a0, -a1)
            }
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match self.fin_kind() {
            Some(k) => Elem::Fin(fin_mul(k, self.expect_fin(a), self.expect_fin(b))),
            None => {
                let (a0, a1) = self.expect_big(a);
                let (b0, b1) = self.expect_big(b);
                if self.tag == RingTag::Q {
                    Elem::big(a0 * b0, BigRational::zero())
                } else {
                    // (a0 + a1 phi)(b0 + b1 phi) with phi^2 = phi + 1.
                    let cross = a1 * b1;
                    Elem::big(a0 * b0 + &cross, a0 * b1 + a1 * b0 + cross)
                }
            }
        }
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match self.fin_kind() {
            Some(FinKind::Mod { m: 4 }) => matches!(self.expect_fin(a), 1 | 3),
            Some(_) => self.expect_fin(a) != 0,
            None => !self.is_zero(a),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if !self.is_unit(a) {
            return Err(Error::NonUnit(format!(
                "{} is not invertible in {}",
                self.format_elem(a),
                self.tag
            )));
        }
        match self.fin_kind() {
            Some(k) => Ok(Elem::Fin(fin_inv(k, self.expect_fin(a)))),
            None => {
                let (a0, a1) = self.expect_big(a);
                if a1.is_zero() {
                    Ok(Elem::big(a0.recip(), BigRational::zero()))
                } else {
                    // 1/(a0 + a1 phi) = (a0 + a1 - a1 phi) / (a0^2 + a0 a1 - a1^2)
                    let norm = a0 * a0 + a0 * a1 - a1 * a1;
                    let ninv = norm.recip();
                    Ok(Elem::big((a0 + a1) * &ninv, -(a1 * &ninv)))
                }
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// All elements of a finite ring in a fixed order.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let q = self
            .cardinality()
            .ok_or_else(|| Error::Input(format!("{} is infinite", self.tag)))?;
        Ok((0..q as u8).map(Elem::Fin).collect())
    }

    pub fn has_galois(&self) -> bool {
        self.is_quadratic_extension()
    }

    /// Nontrivial automorphism fixing the base: Frobenius on the finite
    /// quadratic extensions, `phi -> 1 - phi` over Qphi.
    pub fn galois(&self, a: &Elem) -> Result<Elem> {
        if !self.has_galois() {
            return Err(Error::Input(format!(
                "{} has no nontrivial automorphism over its base",
                self.tag
            )));
        }
        match self.fin_kind() {
            Some(FinKind::Ext { p, c1, .. }) => {
                let (a0, a1) = fin_split(p, self.expect_fin(a));
                // conjugate root of x^2 - c1 x - c0 is c1 - x
                let r0 = (a0 + a1 * c1) % p;
                let r1 = (p - a1) % p;
                Ok(Elem::Fin(fin_join(p, r0, r1)))
            }
            _ => {
                let (a0, a1) = self.expect_big(a);
                Ok(Elem::big(a0 + a1, -a1))
            }
        }
    }

    /// Canonical text encoding used by the module file format.
    pub fn format_elem(&self, a: &Elem) -> String {
        match self.fin_kind() {
            Some(FinKind::Mod { .. }) => format!("{}", self.expect_fin(a)),
            Some(FinKind::Ext { p, .. }) => {
                let (a0, a1) = fin_split(p, self.expect_fin(a));
                format!("{a0}:{a1}")
            }
            None => {
                let (a0, a1) = self.expect_big(a);
                if self.tag == RingTag::Q {
                    format_rational(a0)
                } else {
                    format!("{}:{}", format_rational(a0), format_rational(a1))
                }
            }
        }
    }

    /// Parses the canonical encoding; rejects non-canonical spellings so
    /// that write/read round-trips are bit-exact.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let bad = |msg: &str| Error::Input(format!("bad {} element `{s}`: {msg}", self.tag));
        match self.fin_kind() {
            Some(FinKind::Mod { m }) => {
                let v: u8 = s.parse().map_err(|_| bad("expected a residue"))?;
                if v >= m {
                    return Err(bad("residue out of range"));
                }
                Ok(Elem::Fin(v))
            }
            Some(FinKind::Ext { p, .. }) => {
                let (l, r) = s.split_once(':').ok_or_else(|| bad("expected `a:b`"))?;
                let a0: u8 = l.parse().map_err(|_| bad("bad component"))?;
                let a1: u8 = r.parse().map_err(|_| bad("bad component"))?;
                if a0 >= p || a1 >= p {
                    return Err(bad("component out of range"));
                }
                Ok(Elem::Fin(fin_join(p, a0, a1)))
            }
            None => {
                if self.tag == RingTag::Q {
                    Ok(Elem::big(parse_rational(s).map_err(|m| bad(&m))?, BigRational::zero()))
                } else {
                    let (l, r) = s.split_once(':').ok_or_else(|| bad("expected `a:b`"))?;
                    Ok(Elem::big(
                        parse_rational(l).map_err(|m| bad(&m))?,
                        parse_rational(r).map_err(|m| bad(&m))?,
                    ))
                }
            }
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> std::result::Result<BigRational, String> {
    let parse_int = |t: &str| -> std::result::Result<BigInt, String> {
        if t.is_empty() || t == "-" {
            return Err("empty integer".into());
        }
        t.parse::<BigInt>().map_err(|_| format!("bad integer `{t}`"))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let numer = parse_int(n)?;
            let denom = parse_int(d)?;
            if denom <= BigInt::zero() {
                return Err("denominator must be positive".into());
            }
            if num::Integer::gcd(&numer.abs(), &denom) != BigInt::one() {
                return Err("fraction not in lowest terms".into());
            }
            Ok(BigRational::new(numer, denom))
        }
    }
}

// Byte-packed finite arithmetic. Extension elements are a0 + a1*p.

pub(crate) fn fin_split(p: u8, v: u8) -> (u8, u8) {
    (v % p, v / p)
}

pub(crate) fn fin_join(p: u8, a0: u8, a1: u8) -> u8 {
    a0 + a1 * p
}

pub(crate) fn fin_add(k: FinKind, a: u8, b: u8) -> u8 {
    match k {
        FinKind::Mod { m } => (a + b) % m,
        FinKind::Ext { p, .. } => {
            let (a0, a1) = fin_split(p, a);
            let (b0, b1) = fin_split(p, b);
            fin_join(p, (a0 + b0) % p, (a1 + b1) % p)
        }
    }
}

pub(crate) fn fin_neg(k: FinKind, a: u8) -> u8 {
    match k {
        FinKind::Mod { m } => (m - a) % m,
        FinKind::Ext { p, .. } => {
            let (a0, a1) = fin_split(p, a);
            fin_join(p, (p - a0) % p, (p - a1) % p)
        }
    }
}

pub(crate) fn fin_mul(k: FinKind, a: u8, b: u8) -> u8 {
    match k {
        FinKind::Mod { m } => ((a as u16 * b as u16) % m as u16) as u8,
        FinKind::Ext { p, c0, c1 } => {
            let (a0, a1) = fin_split(p, a);
            let (b0, b1) = fin_split(p, b);
            let (a0, a1, b0, b1) = (a0 as u16, a1 as u16, b0 as u16, b1 as u16);
            let (p16, c0, c1) = (p as u16, c0 as u16, c1 as u16);
            let cross = a1 * b1;
            let r0 = (a0 * b0 + c0 * cross) % p16;
            let r1 = (a0 * b1 + a1 * b0 + c1 * cross) % p16;
            fin_join(p, r0 as u8, r1 as u8)
        }
    }
}

/// Inverse of a unit; caller guarantees `a` is a unit.
pub(crate) fn fin_inv(k: FinKind, a: u8) -> u8 {
    let q = match k {
        FinKind::Mod { m } => m,
        FinKind::Ext { p, .. } => p * p,
    };
    for b in 1..q {
        if fin_mul(k, a, b) == 1 {
            return b;
        }
    }
    unreachable!("fin_inv called on a non-unit")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_rings() -> Vec<Ring> {
        RingTag::ALL.iter().map(|&t| ring_make(t)).collect()
    }

    #[test]
    fn ring_make_basic_shapes() {
        let f4 = ring_make(RingTag::F4);
        assert_eq!(f4.cardinality(), Some(4));
        assert_eq!(f4.characteristic(), 2);
        assert!(f4.is_field());

        let z4 = ring_make(RingTag::Z4);
        assert_eq!(z4.cardinality(), Some(4));
        assert_eq!(z4.characteristic(), 4);
        assert!(!z4.is_field());

        let qphi = ring_make(RingTag::Qphi);
        assert_eq!(qphi.cardinality(), None);
        assert_eq!(qphi.characteristic(), 0);
    }

    #[test]
    fn unknown_tag_is_rejected() {
        assert!(RingTag::parse("F8").is_err());
        assert_eq!(RingTag::parse("F49").unwrap(), RingTag::F49);
    }

    #[test]
    fn extension_multiplication_matches_defining_polynomials() {
        // x * x = x + 1 in F4
        let f4 = ring_make(RingTag::F4);
        let x = Elem::Fin(fin_join(2, 0, 1));
        assert_eq!(f4.mul(&x, &x), Elem::Fin(fin_join(2, 1, 1)));

        // x * x = 2 in F9
        let f9 = ring_make(RingTag::F9);
        let x = Elem::Fin(fin_join(3, 0, 1));
        assert_eq!(f9.mul(&x, &x), Elem::Fin(fin_join(3, 2, 0)));
    }

    #[test]
    fn z4_division_by_two_fails() {
        let z4 = ring_make(RingTag::Z4);
        let err = z4.div(&z4.one(), &z4.int(2)).unwrap_err();
        assert!(matches!(err, Error::NonUnit(_)));
        assert_eq!(z4.div(&z4.int(3), &z4.int(3)).unwrap(), z4.one());
    }

    #[test]
    fn field_axioms_exhaustive_on_finite_fields() {
        for ring in all_rings() {
            if !ring.is_finite() || !ring.is_field() {
                continue;
            }
            let elems = ring.elements().unwrap();
            for a in &elems {
                // inverses of nonzero elements
                if !ring.is_zero(a) {
                    let ai = ring.inv(a).unwrap();
                    assert!(ring.is_one(&ring.mul(a, &ai)), "{}: bad inverse", ring.tag());
                }
                for b in &elems {
                    assert_eq!(ring.add(a, b), ring.add(b, a));
                    assert_eq!(ring.mul(a, b), ring.mul(b, a));
                    for c in &elems {
                        let l = ring.mul(a, &ring.add(b, c));
                        let r = ring.add(&ring.mul(a, b), &ring.mul(a, c));
                        assert_eq!(l, r, "{}: distributivity", ring.tag());
                        let l = ring.mul(&ring.mul(a, b), c);
                        let r = ring.mul(a, &ring.mul(b, c));
                        assert_eq!(l, r, "{}: associativity", ring.tag());
                    }
                }
            }
        }
    }

    #[test]
    fn galois_is_an_involution_and_fixes_base() {
        for ring in all_rings().into_iter().filter(Ring::has_galois) {
            if ring.is_finite() {
                for a in ring.elements().unwrap() {
                    let g = ring.galois(&a).unwrap();
                    assert_eq!(ring.galois(&g).unwrap(), a, "{}", ring.tag());
                    // automorphism property on all pairs
                    for b in ring.elements().unwrap() {
                        let gb = ring.galois(&b).unwrap();
                        assert_eq!(
                            ring.galois(&ring.mul(&a, &b)).unwrap(),
                            ring.mul(&g, &gb)
                        );
                    }
                }
                // base field is fixed pointwise
                let p = ring.characteristic() as i64;
                for n in 0..p {
                    let c = ring.int(n);
                    assert_eq!(ring.galois(&c).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn golden_ratio_conjugation() {
        let qphi = ring_make(RingTag::Qphi);
        let phi = Elem::from_pair(0, 1);
        // phi -> 1 - phi
        assert_eq!(qphi.galois(&phi).unwrap(), Elem::from_pair(1, -1));
        // phi^2 = phi + 1
        assert_eq!(qphi.mul(&phi, &phi), Elem::from_pair(1, 1));
        // 1/phi = phi - 1
        assert_eq!(qphi.inv(&phi).unwrap(), Elem::from_pair(-1, 1));
    }

    #[test]
    fn frobenius_images_match_examples() {
        let f4 = ring_make(RingTag::F4);
        let x = Elem::Fin(fin_join(2, 0, 1));
        assert_eq!(f4.galois(&x).unwrap(), Elem::Fin(fin_join(2, 1, 1))); // x -> x + 1

        let f9 = ring_make(RingTag::F9);
        for a0 in 0..3 {
            for a1 in 0..3 {
                let e = Elem::Fin(fin_join(3, a0, a1));
                let want = Elem::Fin(fin_join(3, a0, (3 - a1) % 3)); // (a, b) -> (a, -b)
                assert_eq!(f9.galois(&e).unwrap(), want);
            }
        }
    }

    #[test]
    fn characteristic_behaviour() {
        for ring in all_rings() {
            let p = ring.characteristic();
            if p > 0 {
                assert!(ring.is_zero(&ring.int(p as i64)));
            } else {
                let mut acc = ring.zero();
                for _ in 0..100 {
                    acc = ring.add(&acc, &ring.one());
                    assert!(!ring.is_zero(&acc));
                }
            }
        }
    }

    #[test]
    fn element_text_round_trips() {
        for ring in all_rings() {
            if ring.is_finite() {
                for e in ring.elements().unwrap() {
                    let s = ring.format_elem(&e);
                    assert_eq!(ring.parse_elem(&s).unwrap(), e, "{} `{s}`", ring.tag());
                }
            }
        }
        let q = ring_make(RingTag::Q);
        for s in ["0", "-7", "3/4", "-22/7"] {
            let e = q.parse_elem(s).unwrap();
            assert_eq!(q.format_elem(&e), s);
        }
        assert!(q.parse_elem("4/8").is_err()); // not in lowest terms
        assert!(q.parse_elem("1/-2").is_err()); // negative denominator

        let qphi = ring_make(RingTag::Qphi);
        for s in ["0:0", "1/2:-3", "-1:2/5"] {
            let e = qphi.parse_elem(s).unwrap();
            assert_eq!(qphi.format_elem(&e), s);
        }
    }
}
