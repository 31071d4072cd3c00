use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::{prime_power, FiniteGroup};
use crate::error::{Error, Result};

/// How to construct a group.
///
/// The string form accepts `C<n>` (or `Z<n>`) for the cyclic group of prime
/// power order `n`, `E<q>` for the elementary abelian group of order `q`,
/// `Q8`, `D8`, `Heis<p>`, products joined by `x` (`Q8xC2`), and
/// `table:<path>` (or any path ending in `.cay`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic { p: usize, n: u32 },
    Elementary { p: usize, k: u32 },
    Quaternion8,
    Dihedral8,
    Heisenberg { p: usize },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(PathBuf),
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic { p, n } => FiniteGroup::cyclic(*p, *n),
            GroupSpec::Elementary { p, k } => FiniteGroup::elementary(*p, *k),
            GroupSpec::Quaternion8 => Ok(FiniteGroup::quaternion8()),
            GroupSpec::Dihedral8 => Ok(FiniteGroup::dihedral8()),
            GroupSpec::Heisenberg { p } => FiniteGroup::heisenberg(*p),
            GroupSpec::Product(a, b) => FiniteGroup::try_direct_product(&a.build()?, &b.build()?),
            GroupSpec::Table(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
                super::parse_cay(&text, path)
            }
        }
    }
}

fn prime_power_arg(s: &str, whole: &str) -> Result<(usize, u32)> {
    let n: usize = s.parse().map_err(|_| Error::BadSpec(whole.into()))?;
    prime_power(n).ok_or_else(|| Error::BadSpec(format!("{whole}: {n} is not a prime power")))
}

fn parse_atom(s: &str) -> Result<GroupSpec> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q8") {
        return Ok(GroupSpec::Quaternion8);
    }
    if t.eq_ignore_ascii_case("d8") {
        return Ok(GroupSpec::Dihedral8);
    }
    if let Some(rest) = t.strip_prefix("Heis").or_else(|| t.strip_prefix("heis")) {
        let p: usize = rest.parse().map_err(|_| Error::BadSpec(t.into()))?;
        return Ok(GroupSpec::Heisenberg { p });
    }
    if let Some(rest) = t.strip_prefix(['C', 'Z', 'c', 'z']) {
        let (p, n) = prime_power_arg(rest, t)?;
        return Ok(GroupSpec::Cyclic { p, n });
    }
    if let Some(rest) = t.strip_prefix(['E', 'e']) {
        let (p, k) = prime_power_arg(rest, t)?;
        return Ok(GroupSpec::Elementary { p, k });
    }
    Err(Error::BadSpec(t.into()))
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(path) = t.strip_prefix("table:") {
            return Ok(GroupSpec::Table(PathBuf::from(path)));
        }
        if t.ends_with(".cay") {
            return Ok(GroupSpec::Table(PathBuf::from(t)));
        }
        let mut parts = t.split(['x', 'X']).map(parse_atom);
        let first = parts.next().ok_or_else(|| Error::BadSpec(t.into()))??;
        parts.try_fold(first, |acc, next| Ok(GroupSpec::Product(Box::new(acc), Box::new(next?))))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { p, n } => write!(f, "C{}", p.pow(*n)),
            GroupSpec::Elementary { p, k } => write!(f, "E{}", p.pow(*k)),
            GroupSpec::Quaternion8 => write!(f, "Q8"),
            GroupSpec::Dihedral8 => write!(f, "D8"),
            GroupSpec::Heisenberg { p } => write!(f, "Heis{p}"),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
            GroupSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_registry_names() {
        let g: GroupSpec = "Q8xC2".parse().unwrap();
        assert_eq!(g.to_string(), "Q8xC2");
        assert_eq!(g.build().unwrap().order(), 16);
        assert_eq!("E8".parse::<GroupSpec>().unwrap(), GroupSpec::Elementary { p: 2, k: 3 });
        assert_eq!("Z9".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic { p: 3, n: 2 });
        assert_eq!("Heis3".parse::<GroupSpec>().unwrap().build().unwrap().order(), 27);
        assert_eq!("C4xC2xC2".parse::<GroupSpec>().unwrap().build().unwrap().order(), 16);
        assert!(matches!("table:foo.cay".parse::<GroupSpec>().unwrap(), GroupSpec::Table(_)));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!("C6".parse::<GroupSpec>().is_err());
        assert!("Foo".parse::<GroupSpec>().is_err());
        assert!("Heis4".parse::<GroupSpec>().unwrap().build().is_err());
        assert!("C3xC2".parse::<GroupSpec>().unwrap().build().is_err());
    }
}
