//! Exact values with a rigorous error radius.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::rational::{self, Rational};

/// A rational centre and a non-negative radius; the quantity it stands for
/// lies in `[value - radius, value + radius]`. `digits` only controls how
/// many decimals are rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedValue {
    value: Rational,
    radius: Rational,
    digits: u32,
}

impl BoundedValue {
    pub fn new(value: Rational, radius: Rational, digits: u32) -> Self {
        assert!(!radius.is_negative(), "radius must be non-negative");
        BoundedValue { value, radius, digits }
    }

    pub fn exact(value: Rational, digits: u32) -> Self {
        Self::new(value, Rational::zero(), digits)
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn with_digits(mut self, digits: u32) -> Self {
        self.digits = digits;
        self
    }

    pub fn lower(&self) -> Rational {
        &self.value - &self.radius
    }

    pub fn upper(&self) -> Rational {
        &self.value + &self.radius
    }

    pub fn contains(&self, x: &Rational) -> bool {
        (x - &self.value).abs() <= self.radius
    }

    /// Whether the two enclosures intersect.
    pub fn overlaps(&self, o: &BoundedValue) -> bool {
        (&self.value - &o.value).abs() <= &self.radius + &o.radius
    }

    /// Largest possible `|x - y|` for `x`, `y` in the two enclosures.
    pub fn max_distance(&self, o: &BoundedValue) -> Rational {
        (&self.value - &o.value).abs() + &self.radius + &o.radius
    }

    /// Largest possible `|x|` in the enclosure.
    pub fn max_abs(&self) -> Rational {
        self.value.abs() + &self.radius
    }

    pub fn add(&self, o: &BoundedValue) -> BoundedValue {
        BoundedValue::new(&self.value + &o.value, &self.radius + &o.radius, self.digits.min(o.digits))
    }

    pub fn sub(&self, o: &BoundedValue) -> BoundedValue {
        BoundedValue::new(&self.value - &o.value, &self.radius + &o.radius, self.digits.min(o.digits))
    }

    pub fn mul(&self, o: &BoundedValue) -> BoundedValue {
        let radius = self.value.abs() * &o.radius + o.value.abs() * &self.radius + &self.radius * &o.radius;
        BoundedValue::new(&self.value * &o.value, radius, self.digits.min(o.digits))
    }

    pub fn scale(&self, k: &Rational) -> BoundedValue {
        BoundedValue::new(&self.value * k, &self.radius * k.abs(), self.digits)
    }

    pub fn pow(&self, exp: u32) -> BoundedValue {
        let mut acc = BoundedValue::exact(Rational::from_integer(1.into()), self.digits);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn value_decimal(&self) -> String {
        rational::to_decimal(&self.value, self.digits)
    }

    pub fn radius_sci(&self) -> String {
        rational::to_sci_upper(&self.radius)
    }
}

impl fmt::Display for BoundedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.value_decimal(), self.radius_sci())
    }
}

impl Serialize for BoundedValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("BoundedValue", 3)?;
        st.serialize_field("value", &self.value_decimal())?;
        st.serialize_field("radius", &self.radius_sci())?;
        st.serialize_field("digits", &self.digits)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn rendering() {
        let b = BoundedValue::new(rat(6, 5), rat(1, 1000), 4);
        assert_eq!(b.to_string(), "1.2000 ± 1.00e-3");
        assert!(b.contains(&rat(1201, 1000)));
        assert!(!b.contains(&rat(1202, 1000)));
    }

    proptest! {
        #[test]
        fn interval_products_enclose(a in -50i64..50, b in -50i64..50, ra in 0i64..5, rb in 0i64..5,
                                     ta in -100i64..=100, tb in -100i64..=100) {
            let x = BoundedValue::new(int(a), int(ra), 3);
            let y = BoundedValue::new(int(b), int(rb), 3);
            // points inside each interval
            let px = int(a) + rat(ta * ra, 100);
            let py = int(b) + rat(tb * rb, 100);
            prop_assert!(x.mul(&y).contains(&(&px * &py)));
            prop_assert!(x.add(&y).contains(&(&px + &py)));
            prop_assert!(x.sub(&y).contains(&(&px - &py)));
            prop_assert!(x.pow(3).contains(&(&px * &px * &px)));
        }
    }
}
