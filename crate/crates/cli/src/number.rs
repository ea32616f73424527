//! Numbers as they appear in reports.
//!
//! JSON and CSV carry shortest round-trip decimals; the text format prints
//! fixed 15 decimal places grouped in threes with `~`, the way the tables
//! of the original computations were typeset.

use std::fmt;

use cnct::Scalar;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A real number that survives a JSON round trip even when not finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Real(pub f64);

impl Serialize for Real {
    fn serialize<Z: Serializer>(&self, s: Z) -> Result<Z::Ok, Z::Error> {
        let x = self.0;
        if x.is_finite() {
            s.serialize_f64(x)
        } else if x.is_nan() {
            s.serialize_str("nan")
        } else if x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }
}

impl<'de> Deserialize<'de> for Real {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Real(x)),
            Raw::Text(t) => match t.as_str() {
                "nan" => Ok(Real(f64::NAN)),
                "inf" => Ok(Real(f64::INFINITY)),
                "-inf" => Ok(Real(f64::NEG_INFINITY)),
                _ => Err(serde::de::Error::custom(format!("not a number: {t}"))),
            },
        }
    }
}

/// A real or complex value. Complex values serialize as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Real(Real),
    Complex([Real; 2]),
}

impl Num {
    pub fn of<S: Scalar>(x: S) -> Num {
        if is_complex::<S>() {
            Num::Complex([Real(x.re()), Real(x.im())])
        } else {
            Num::Real(Real(x.re()))
        }
    }

    pub fn re(self) -> f64 {
        match self {
            Num::Real(x) => x.0,
            Num::Complex([re, _]) => re.0,
        }
    }

    pub fn im(self) -> f64 {
        match self {
            Num::Real(_) => 0.0,
            Num::Complex([_, im]) => im.0,
        }
    }

    /// Fixed 15 decimals with `~` grouping.
    pub fn grouped(self) -> String {
        match self {
            Num::Real(x) => grouped(x.0),
            Num::Complex([re, im]) => {
                let sign = if im.0.is_sign_negative() { '-' } else { '+' };
                format!("{} {sign} {}i", grouped(re.0), grouped(im.0.abs()))
            }
        }
    }

    /// Shortest round-trip decimal, `re+imi` for complex values.
    pub fn plain(self) -> String {
        match self {
            Num::Real(x) => format!("{}", x.0),
            Num::Complex([re, im]) => {
                let sign = if im.0.is_sign_negative() { '-' } else { '+' };
                format!("{}{sign}{}i", re.0, im.0.abs())
            }
        }
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.grouped())
    }
}

pub fn is_complex<S: Scalar>() -> bool {
    S::from_parts(0.0, 1.0).im() != 0.0
}

/// `x` with 15 decimal places, the fraction grouped in threes by `~`.
pub fn grouped(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.15}");
    let (int, frac) = s.split_once('.').expect("fixed format has a point");
    let groups: Vec<&str> = frac
        .as_bytes()
        .chunks(3)
        .map(|c| std::str::from_utf8(c).expect("ascii digits"))
        .collect();
    format!("{int}.{}", groups.join("~"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cnct::Complex64;

    #[test]
    fn grouping_matches_table_layout() {
        assert_eq!(grouped(0.100_577_943_338_497), "0.100~577~943~338~497");
        assert_eq!(grouped(-0.142_847_143_207_135), "-0.142~847~143~207~135");
        assert_eq!(grouped(26.666_666_666_666_67), "26.666~666~666~666~671");
        assert_eq!(grouped(f64::NAN), "NaN");
    }

    #[test]
    fn complex_values_print_both_parts() {
        let z = Num::of(Complex64::new(0.25, -0.5));
        assert_eq!(
            z.grouped(),
            "0.250~000~000~000~000 - 0.500~000~000~000~000i"
        );
        assert_eq!(z.plain(), "0.25-0.5i");
        assert_eq!(Num::of(0.1f64).plain(), "0.1");
    }

    #[test]
    fn json_round_trip_keeps_bits() {
        for x in [
            0.1,
            -1.0 / 3.0,
            1e-300,
            f64::NAN,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ] {
            let v = vec![Num::of(x), Num::of(Complex64::new(x, 2.0))];
            let text = serde_json::to_string(&v).unwrap();
            let back: Vec<Num> = serde_json::from_str(&text).unwrap();
            assert_eq!(back[0].re().to_bits(), x.to_bits());
            assert_eq!(back[1].re().to_bits(), x.to_bits());
            assert!(matches!(back[1], Num::Complex(_)));
        }
    }
}
