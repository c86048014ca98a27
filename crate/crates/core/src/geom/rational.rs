//! Exact rationals and small fixed-size linear algebra over them.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GeomError;

/// Arbitrary-precision rational number. Always reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` with `q > 0`.
pub fn parse_rat(s: &str) -> Result<Rat, GeomError> {
    let bad = || GeomError::MalformedRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    if den.starts_with('-') || den.starts_with('+') {
        return Err(bad());
    }
    let n = BigInt::from_str(num).map_err(|_| bad())?;
    let d = BigInt::from_str(den).map_err(|_| bad())?;
    if !d.is_positive() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Serde adapter for a rational stored as a `"p/q"` string.
pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let v = RatInput::deserialize(d)?;
        v.into_rat().map_err(serde::de::Error::custom)
    }
}

/// Accepts either `"p/q"` strings or plain JSON integers on input.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RatInput {
    Text(String),
    Int(i64),
}

impl RatInput {
    pub fn into_rat(self) -> Result<Rat, GeomError> {
        match self {
            RatInput::Text(s) => parse_rat(&s),
            RatInput::Int(i) => Ok(rat(i)),
        }
    }
}

/// Smallest integer `b >= 0` with `b^2 >= r` (for `r >= 0`).
pub fn ceil_sqrt(r: &Rat) -> BigInt {
    if !r.is_positive() {
        return BigInt::zero();
    }
    let c = r.ceil().to_integer();
    let mut b = c.sqrt();
    while Rat::from_integer(&b * &b) < *r {
        b += 1;
    }
    while b.is_positive() && Rat::from_integer((&b - 1u32) * (&b - 1u32)) >= *r {
        b -= 1;
    }
    b
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3(pub [Rat; 3]);

impl Vec3 {
    pub fn new(x: Rat, y: Rat, z: Rat) -> Self {
        Vec3([x, y, z])
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        Vec3([rat(x), rat(y), rat(z)])
    }

    pub fn zero() -> Self {
        Vec3::from_ints(0, 0, 0)
    }

    pub fn unit(i: usize) -> Self {
        let mut v = Vec3::zero();
        v.0[i] = Rat::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, o: &Vec3) -> Rat {
        &self.0[0] * &o.0[0] + &self.0[1] * &o.0[1] + &self.0[2] * &o.0[2]
    }

    pub fn cross(&self, o: &Vec3) -> Vec3 {
        let [a, b, c] = &self.0;
        let [x, y, z] = &o.0;
        Vec3([b * z - c * y, c * x - a * z, a * y - b * x])
    }

    pub fn scale(&self, k: &Rat) -> Vec3 {
        Vec3([&self.0[0] * k, &self.0[1] * k, &self.0[2] * k])
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Positive multiple with coprime integer coordinates. Direction is kept.
    pub fn primitive(&self) -> Vec3 {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Vec3([
            Rat::from_integer(&ints[0] / &g),
            Rat::from_integer(&ints[1] / &g),
            Rat::from_integer(&ints[2] / &g),
        ])
    }

    /// Coordinates reduced into `[0, 1)`.
    pub fn fract(&self) -> Vec3 {
        Vec3(self.0.clone().map(|c| &c - c.floor()))
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> Vec3 {
        Vec3([f(&self.0[0]), f(&self.0[1]), f(&self.0[2])])
    }
}

pub fn det3(a: &Vec3, b: &Vec3, c: &Vec3) -> Rat {
    a.dot(&b.cross(c))
}

impl fmt::Debug for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Index<usize> for Vec3 {
    type Output = Rat;
    fn index(&self, i: usize) -> &Rat {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vec3 {
    fn index_mut(&mut self, i: usize) -> &mut Rat {
        &mut self.0[i]
    }
}

impl Add for &Vec3 {
    type Output = Vec3;
    fn add(self, o: &Vec3) -> Vec3 {
        Vec3([&self.0[0] + &o.0[0], &self.0[1] + &o.0[1], &self.0[2] + &o.0[2]])
    }
}

impl Sub for &Vec3 {
    type Output = Vec3;
    fn sub(self, o: &Vec3) -> Vec3 {
        Vec3([&self.0[0] - &o.0[0], &self.0[1] - &o.0[1], &self.0[2] - &o.0[2]])
    }
}

impl Neg for &Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3([-&self.0[0], -&self.0[1], -&self.0[2]])
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        &self + &o
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        &self - &o
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        -&self
    }
}

impl Serialize for Vec3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(format_rat).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vec3 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = <[RatInput; 3]>::deserialize(d)?;
        let [a, b, c] = v;
        let conv = |x: RatInput| x.into_rat().map_err(serde::de::Error::custom);
        Ok(Vec3([conv(a)?, conv(b)?, conv(c)?]))
    }
}

/// Row-major 3x3 rational matrix.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix3(pub [Vec3; 3]);

impl Matrix3 {
    pub fn identity() -> Self {
        Matrix3([Vec3::unit(0), Vec3::unit(1), Vec3::unit(2)])
    }

    pub fn from_ints(rows: [[i64; 3]; 3]) -> Self {
        Matrix3(rows.map(|r| Vec3::from_ints(r[0], r[1], r[2])))
    }

    pub fn from_rows(rows: [Vec3; 3]) -> Self {
        Matrix3(rows)
    }

    pub fn from_columns(cols: [Vec3; 3]) -> Self {
        Matrix3::from_rows(cols).transpose()
    }

    pub fn row(&self, i: usize) -> &Vec3 {
        &self.0[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.0[i].0[j]
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3::new(
            self.entry(0, j).clone(),
            self.entry(1, j).clone(),
            self.entry(2, j).clone(),
        )
    }

    pub fn transpose(&self) -> Self {
        Matrix3([self.column(0), self.column(1), self.column(2)])
    }

    pub fn det(&self) -> Rat {
        det3(&self.0[0], &self.0[1], &self.0[2])
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn mul_vec(&self, v: &Vec3) -> Vec3 {
        Vec3::new(self.0[0].dot(v), self.0[1].dot(v), self.0[2].dot(v))
    }

    pub fn mul(&self, o: &Matrix3) -> Matrix3 {
        let ot = o.transpose();
        Matrix3(
            [0, 1, 2].map(|i| Vec3::new(self.0[i].dot(&ot.0[0]), self.0[i].dot(&ot.0[1]), self.0[i].dot(&ot.0[2]))),
        )
    }

    pub fn inverse(&self) -> Option<Matrix3> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let [a, b, c] = &self.0;
        // columns of the inverse are the cross products of row pairs
        let adj_cols = [b.cross(c), c.cross(a), a.cross(b)];
        let inv_t = Matrix3(adj_cols.map(|v| v.scale(&d.recip())));
        Some(inv_t.transpose())
    }

    /// Quadratic form `v^T M v`.
    pub fn form(&self, v: &Vec3) -> Rat {
        v.dot(&self.mul_vec(v))
    }

    /// Bilinear form `u^T M v`.
    pub fn bilinear(&self, u: &Vec3, v: &Vec3) -> Rat {
        u.dot(&self.mul_vec(v))
    }

    /// Sylvester's criterion on leading principal minors.
    pub fn is_positive_definite(&self) -> bool {
        let m1 = self.entry(0, 0).clone();
        let m2 = self.entry(0, 0) * self.entry(1, 1) - self.entry(0, 1) * self.entry(1, 0);
        m1.is_positive() && m2.is_positive() && self.det().is_positive()
    }
}

/// Solves `M x = b` for nonsingular `M`.
pub fn solve3(m: &Matrix3, b: &Vec3) -> Option<Vec3> {
    m.inverse().map(|inv| inv.mul_vec(b))
}

/// Dimension of the linear span of the given vectors.
pub fn rank(vectors: &[Vec3]) -> usize {
    let mut rows: Vec<Vec3> = vectors.iter().filter(|v| !v.is_zero()).cloned().collect();
    let mut r = 0;
    for col in 0..3 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if !row[col].is_zero() {
                let f = &row[col] / &pivot[col];
                *row = &*row - &pivot.scale(&f);
            }
        }
        r += 1;
    }
    r
}

/// Affine dimension of a point set (`-1` is reported as `0` for the empty set).
pub fn affine_dimension(points: &[Vec3]) -> usize {
    match points.split_first() {
        None => 0,
        Some((p0, rest)) => rank(&rest.iter().map(|p| p - p0).collect::<Vec<_>>()),
    }
}

/// Two independent linear functionals vanishing on `v` (nonzero); the first two
/// unit functionals that complete `v` to a basis, projected away from `v` via cross products.
pub fn quotient_functionals(v: &Vec3) -> [Vec3; 2] {
    let mut out: Vec<Vec3> = Vec::with_capacity(2);
    for i in 0..3 {
        let f = v.cross(&Vec3::unit(i));
        if f.is_zero() {
            continue;
        }
        if out.len() == 1 && rank(&[out[0].clone(), f.clone()]) < 2 {
            continue;
        }
        out.push(f);
        if out.len() == 2 {
            break;
        }
    }
    [out[0].clone(), out[1].clone()]
}

pub fn sign(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("12/5").unwrap(), ratio(12, 5));
        assert_eq!(parse_rat("-4/6").unwrap(), ratio(-2, 3));
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        assert_eq!(format_rat(&ratio(12, 5)), "12/5");
        assert_eq!(format_rat(&rat(1)), "1");
        assert_eq!(format_rat(&ratio(-6, 4)), "-3/2");
    }

    #[test]
    fn parse_rejects_bad_denominators() {
        for bad in ["1/0", "1/-2", "x", "", "1/", "/2", "1.5"] {
            assert!(parse_rat(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix3::from_ints([[2, 1, 1], [1, 2, 1], [1, 1, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix3::identity());
        assert_eq!(m.det(), rat(4));
        assert!(m.is_positive_definite());
        assert!(!Matrix3::from_ints([[1, 2, 0], [2, 1, 0], [0, 0, 1]]).is_positive_definite());
    }

    #[test]
    fn primitive_keeps_direction() {
        let v = Vec3::new(ratio(-2, 3), rat(0), ratio(4, 3));
        assert_eq!(v.primitive(), Vec3::from_ints(-1, 0, 2));
    }

    #[test]
    fn ceil_sqrt_exact() {
        assert_eq!(ceil_sqrt(&rat(9)), BigInt::from(3));
        assert_eq!(ceil_sqrt(&rat(10)), BigInt::from(4));
        assert_eq!(ceil_sqrt(&ratio(1, 4)), BigInt::from(1));
        assert_eq!(ceil_sqrt(&rat(0)), BigInt::from(0));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[Vec3::unit(0), Vec3::unit(1), Vec3::from_ints(1, 1, 0)]), 2);
        assert_eq!(affine_dimension(&[Vec3::zero(), Vec3::unit(0), Vec3::unit(1), Vec3::unit(2)]), 3);
        let q = quotient_functionals(&Vec3::from_ints(1, 1, 1));
        assert!(q[0].dot(&Vec3::from_ints(1, 1, 1)).is_zero());
        assert_eq!(rank(&q), 2);
    }
}
