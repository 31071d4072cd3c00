//! Abstract ring targets for `pcover simple`.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context};
use pcover_core::structure::BlockSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingTarget {
    M2 { p: u64 },
    Zn { n: u64 },
    Block { spec: BlockSpec, p: u64 },
}

fn fields(body: &str) -> anyhow::Result<BTreeMap<&str, &str>> {
    let mut out = BTreeMap::new();
    let mut rest = body;
    while !rest.is_empty() {
        let (key, tail) = rest.split_once('=').ok_or_else(|| anyhow!("expected key=value in {body:?}"))?;
        // A value runs up to the next `,key=`.
        let end = tail
            .match_indices(',')
            .map(|(i, _)| i)
            .find(|&i| tail[i + 1..].split(',').next().is_some_and(|s| s.contains('=')))
            .unwrap_or(tail.len());
        out.insert(key.trim(), tail[..end].trim());
        rest = tail.get(end + 1..).unwrap_or("");
    }
    Ok(out)
}

fn num(f: &BTreeMap<&str, &str>, key: &str) -> anyhow::Result<u64> {
    let v = f.get(key).ok_or_else(|| anyhow!("missing {key}="))?;
    v.parse().with_context(|| format!("{key}={v} is not a number"))
}

/// Parses `M2:p=<p>`, `Zn:n=<n>` or `N:m=<m>,n=<n>,att=<i,..>,p=<p>`.
/// Returns `None` when `s` names none of these.
pub fn parse_target(s: &str) -> anyhow::Result<Option<RingTarget>> {
    let Some((kind, body)) = s.split_once(':') else {
        return Ok(None);
    };
    if !["M2", "Zn", "N"].contains(&kind) {
        return Ok(None);
    }
    let f = fields(body)?;
    let t = match kind {
        "M2" => RingTarget::M2 { p: num(&f, "p")? },
        "Zn" => RingTarget::Zn { n: num(&f, "n")? },
        "N" => {
            let m = num(&f, "m")? as usize;
            let n = num(&f, "n")? as usize;
            let att = match f.get("att") {
                Some(v) if !v.is_empty() => v
                    .split(',')
                    .map(|a| a.trim().parse::<usize>().with_context(|| format!("bad attachment {a:?}")))
                    .collect::<anyhow::Result<Vec<_>>>()?,
                _ => vec![1; n],
            };
            RingTarget::Block {
                spec: BlockSpec::new(m, n, att)?,
                p: num(&f, "p")?,
            }
        }
        _ => return Ok(None),
    };
    if let RingTarget::M2 { p } | RingTarget::Block { p, .. } = t {
        if !pcover_core::group::is_prime(p as usize) {
            bail!("p={p} is not prime");
        }
    }
    Ok(Some(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_targets() {
        assert_eq!(parse_target("M2:p=2").unwrap(), Some(RingTarget::M2 { p: 2 }));
        assert_eq!(parse_target("Zn:n=9").unwrap(), Some(RingTarget::Zn { n: 9 }));
        let Some(RingTarget::Block { spec, p }) = parse_target("N:m=2,n=2,att=1,2,p=3").unwrap() else {
            panic!()
        };
        assert_eq!((spec.m(), spec.n(), spec.attachments(), p), (2, 2, &[1, 2][..], 3));
        assert_eq!(parse_target("Q8").unwrap(), None);
        assert_eq!(parse_target("table:g.cay").unwrap(), None);
        assert!(parse_target("M2:p=4").is_err());
        assert!(parse_target("N:m=1,n=1,att=2,p=2").is_err());
    }
}
