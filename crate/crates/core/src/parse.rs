//! Text syntax for reals, angles, complex numbers, symbols and matrices.
//!
//! * reals and angles: `0.25`, `-1e-3`, `pi`, `pi/3`, `-3pi/4`, `2*pi/5`;
//! * complex numbers: `0.5+0.866i`, `0-1i`, `-i`, `3`, or polar `0.5@pi/3`;
//! * symbols: `elliptic:zeta=…`, `affine:zeta=…,a=…`, `blaschke:alpha=…`,
//!   `autD:theta=…,alpha=…`, `autF:a=…,b=…`;
//! * matrices: rows separated by newlines or `;`, entries by whitespace.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::symbols::SymbolSpec;

fn bad(what: &str, s: &str) -> Error {
    Error::Parse(format!("cannot read `{s}` as {what}"))
}

/// A real number, optionally written as a multiple or fraction of `pi`.
pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    if t.is_empty() {
        return Err(bad("a number", s));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numerator = if let Some(coef) = num.strip_suffix("pi") {
        let coef = coef.trim().trim_end_matches('*').trim();
        let factor = match coef {
            "" | "+" => 1.0,
            "-" => -1.0,
            c => c.parse::<f64>().map_err(|_| bad("a number", s))?,
        };
        factor * PI
    } else {
        num.parse::<f64>().map_err(|_| bad("a number", s))?
    };
    let value = match den {
        Some(d) => {
            let d: f64 = d.parse().map_err(|_| bad("a number", s))?;
            if d == 0.0 {
                return Err(bad("a number", s));
            }
            numerator / d
        }
        None => numerator,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad("a finite number", s))
    }
}

/// A complex number in rectangular (`a+bi`) or polar (`r@angle`) form.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad("a complex number", s));
    }
    if let Ok(x) = parse_real(&t) {
        return Ok(Complex64::new(x, 0.0));
    }
    if let Some((r, a)) = t.split_once('@') {
        return Ok(Complex64::from_polar(parse_real(r)?, parse_real(a)?));
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return Ok(Complex64::new(parse_real(&t)?, 0.0));
    };
    // Split at the last sign that is not a leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |p: &str| -> Result<f64> {
        match p {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => parse_real(p).map_err(|_| bad("a complex number", s)),
        }
    };
    match split {
        Some(k) => Ok(Complex64::new(
            parse_real(&body[..k]).map_err(|_| bad("a complex number", s))?,
            imag(&body[k..])?,
        )),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// `key=value` pairs separated by commas.
fn params(s: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, found `{part}`")))?;
        if out.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(Error::Parse(format!("parameter `{}` given twice", k.trim())));
        }
    }
    Ok(out)
}

impl FromStr for SymbolSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, rest) = s.trim().split_once(':').unwrap_or((s.trim(), ""));
        let mut p = params(rest)?;
        let mut take = |key: &str, default: Option<Complex64>| -> Result<Complex64> {
            match (p.remove(key), default) {
                (Some(v), _) => parse_complex(&v),
                (None, Some(d)) => Ok(d),
                (None, None) => Err(Error::Parse(format!("symbol `{kind}` needs `{key}=`"))),
            }
        };
        let zero = Some(Complex64::new(0.0, 0.0));
        let sym = match kind {
            "elliptic" | "rotation" => SymbolSpec::DiscRotation { zeta: take("zeta", None)? },
            "affine" => SymbolSpec::FockAffine {
                zeta: take("zeta", None)?,
                a: take("a", zero)?,
            },
            "blaschke" => SymbolSpec::Blaschke { alpha: take("alpha", None)? },
            "autD" => {
                let theta = take("theta", None)?;
                if theta.im != 0.0 {
                    return Err(Error::Parse("theta must be real".into()));
                }
                SymbolSpec::DiscAutomorphism {
                    theta: theta.re,
                    alpha: take("alpha", zero)?,
                }
            }
            "autF" => SymbolSpec::FockSpecialAutomorphism {
                a: take("a", None)?,
                b: take("b", zero)?,
            },
            other => return Err(Error::Parse(format!("unknown symbol kind `{other}`"))),
        };
        if let Some(extra) = p.keys().next() {
            return Err(Error::Parse(format!("unknown parameter `{extra}` for `{kind}`")));
        }
        sym.validate()?;
        Ok(sym)
    }
}

/// A square matrix: rows on separate lines or separated by `;`, entries
/// separated by whitespace. Blank lines and `#` comments are ignored.
pub fn parse_matrix(text: &str) -> Result<CMatrix> {
    let rows = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(';'))
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| l.split_whitespace().map(parse_complex).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    CMatrix::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reals_and_angles() {
        assert_eq!(parse_real("0.25").unwrap(), 0.25);
        assert_eq!(parse_real(" -1e-3 ").unwrap(), -1e-3);
        assert_eq!(parse_real("pi").unwrap(), PI);
        assert_eq!(parse_real("pi/3").unwrap(), PI / 3.0);
        assert_eq!(parse_real("-3pi/4").unwrap(), -3.0 * PI / 4.0);
        assert_eq!(parse_real("2*pi/5").unwrap(), 2.0 * PI / 5.0);
        assert_eq!(parse_real("1/4").unwrap(), 0.25);
        for s in ["", "pie", "1/0", "x", "inf"] {
            assert!(parse_real(s).is_err(), "{s}");
        }
    }

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.5+0.866i").unwrap(), c(0.5, 0.866));
        assert_eq!(parse_complex("0-1i").unwrap(), c(0., -1.));
        assert_eq!(parse_complex("-i").unwrap(), c(0., -1.));
        assert_eq!(parse_complex("i").unwrap(), c(0., 1.));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0., 2.5));
        assert_eq!(parse_complex("-3").unwrap(), c(-3., 0.));
        assert_eq!(parse_complex("1e-3-2e-2i").unwrap(), c(1e-3, -2e-2));
        assert_eq!(parse_complex("-1E+2+1e-1i").unwrap(), c(-100., 0.1));
        assert_eq!(parse_complex("1 + 2i").unwrap(), c(1., 2.));
        assert_eq!(parse_complex("0.5@pi/3").unwrap(), Complex64::from_polar(0.5, PI / 3.0));
        for s in ["", "1+", "abc", "1+2k", "@1"] {
            assert!(parse_complex(s).is_err(), "{s}");
        }
    }

    #[test]
    fn symbols_round_trip_through_display() {
        let syms = [
            SymbolSpec::DiscRotation { zeta: Complex64::from_polar(0.5, PI / 3.0) },
            SymbolSpec::FockAffine { zeta: c(0.5, 0.), a: c(10., -0.) },
            SymbolSpec::Blaschke { alpha: c(0.25, -0.4330127018922193) },
            SymbolSpec::DiscAutomorphism { theta: 0.5, alpha: c(0.3, 0.) },
            SymbolSpec::FockSpecialAutomorphism { a: c(0., 1.), b: c(0., 0.) },
        ];
        for s in syms {
            let back: SymbolSpec = s.to_string().parse().unwrap();
            assert_eq!(back, s);
        }
    }

    #[test]
    fn symbol_syntax() {
        let s: SymbolSpec = "affine:zeta=0.5,a=10".parse().unwrap();
        assert_eq!(s, SymbolSpec::FockAffine { zeta: c(0.5, 0.), a: c(10., 0.) });
        let s: SymbolSpec = "elliptic:zeta=0-1i".parse().unwrap();
        assert_eq!(s, SymbolSpec::DiscRotation { zeta: c(0., -1.) });
        let s: SymbolSpec = "autD:theta=pi,alpha=0.3".parse().unwrap();
        assert_eq!(s, SymbolSpec::DiscAutomorphism { theta: PI, alpha: c(0.3, 0.) });
        for bad in ["elliptic", "elliptic:z=1", "mobius:a=1", "blaschke:alpha=2", "affine:zeta=1,zeta=2", "autD:theta=1+1i"] {
            assert!(bad.parse::<SymbolSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn matrices() {
        let m = parse_matrix("1 1; 0 -1").unwrap();
        assert_eq!(m.entries(), &[c(1., 0.), c(1., 0.), c(0., 0.), c(-1., 0.)]);
        let m = parse_matrix("# a comment\n0.3-1i 2+0.5i\n\n-0.4+0.1i 1+1i\n").unwrap();
        assert_eq!(m[(1, 0)], c(-0.4, 0.1));
        assert_eq!(parse_matrix(&m.to_string()).unwrap(), m);
        assert!(matches!(parse_matrix("1 2; 3"), Err(Error::Shape(_))));
        assert!(parse_matrix("  \n").is_err());
    }
}
