//! Exact rational scalars. Every coordinate, length and diameter in the
//! crate is a `Q`; no floating point is used anywhere.

use crate::error::{Error, Result};
pub use num_rational::Rational64;

pub type Q = Rational64;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        let d: i64 = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        if d == 0 {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Q::new(n, d))
    } else {
        let n: i64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
        Ok(Q::from_integer(n))
    }
}

pub fn fmt_q(x: Q) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        assert_eq!(parse_q("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_q("-2").unwrap(), qi(-2));
        assert_eq!(fmt_q(q(6, 4)), "3/2");
        assert!(parse_q("1/0").is_err());
    }
}
