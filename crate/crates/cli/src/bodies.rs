use std::fs;

use mixvol::exclusion::perturb_facet;
use mixvol::io::{self, CorpusKind};
use mixvol::{rational, Error, RationalVector, Result, VPolytope};

/// Reads a body argument: a JSON file, `seg:x1,...,xn` for the segment `[0, x]`,
/// or `corpus:kind-n` for a canonical body.
pub fn load(arg: &str) -> Result<VPolytope> {
    if let Some(coords) = arg.strip_prefix("seg:") {
        let v = coords.split(',').map(rational::parse).collect::<Result<Vec<_>>>()?;
        return VPolytope::segment(&RationalVector::new(v)?);
    }
    if let Some(name) = arg.strip_prefix("corpus:") {
        let (kind, n) = name
            .rsplit_once('-')
            .ok_or_else(|| Error::Parse(format!("corpus body {name:?} is not kind-n")))?;
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad dimension in {name:?}")))?;
        return kind.parse::<CorpusKind>()?.body(n);
    }
    let text = fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
    Ok(io::parse_body(&text)?.1)
}

/// Like [`load`], also accepting `pert:i:t` for the facet perturbation `K_{i,t}` of `k`.
pub fn load_relative(arg: &str, k: &VPolytope) -> Result<VPolytope> {
    match arg.strip_prefix("pert:") {
        Some(rest) => {
            let (i, t) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected pert:facet:t, got {arg:?}")))?;
            let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad facet index in {arg:?}")))?;
            Ok(perturb_facet(k, i, &rational::parse(t)?)?.result)
        }
        None => load(arg),
    }
}

/// Splits an optional `:m` multiplicity suffix off a body argument.
pub fn with_multiplicity(arg: &str) -> Result<(VPolytope, usize)> {
    if let Some((body, m)) = arg.rsplit_once(':') {
        if !m.is_empty() && m.bytes().all(|b| b.is_ascii_digit()) && body != "seg" && body != "corpus" {
            let m = m.parse().map_err(|_| Error::Parse(format!("bad multiplicity in {arg:?}")))?;
            return Ok((load(body)?, m));
        }
    }
    Ok((load(arg)?, 1))
}

/// Reads an exponent support: a JSON file, `dense:d`, or `square`.
pub fn load_support(arg: &str) -> Result<Vec<(u32, u32)>> {
    if arg == "square" {
        return Ok(vec![(0, 0), (1, 0), (0, 1), (1, 1)]);
    }
    if let Some(d) = arg.strip_prefix("dense:") {
        let d: u32 = d.parse().map_err(|_| Error::Parse(format!("bad degree in {arg:?}")))?;
        return Ok(mixvol::bkk::dense_support(d));
    }
    let text = fs::read_to_string(arg).map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
    Ok(io::parse_support(&text)?.1)
}
