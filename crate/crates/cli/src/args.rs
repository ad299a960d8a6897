//! Flag value parsers shared by the subcommands.

use umap_core::algebraic::{Field, NumberField};
use umap_core::exact::rational::{self, Rational};

#[derive(Clone, Debug)]
pub struct KList(pub Vec<usize>);

/// Index lists: `3`, `1..6` (inclusive) or `2,4,6`.
pub fn parse_k_list(s: &str) -> Result<KList, String> {
    parse_k(s).map(KList)
}

pub fn parse_k(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("invalid index list '{s}' (use N, A..B or A,B,C)");
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    let ks = s.split(',').map(|t| t.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>, _>>()?;
    if ks.is_empty() {
        return Err(bad());
    }
    Ok(ks)
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    rational::parse_rational(s).map_err(|e| e.to_string())
}

pub fn parse_field(s: &str) -> Result<Field, String> {
    NumberField::parse(s).map_err(|e| e.to_string())
}

/// Named demo configurations: `cor2:M:P` maps `l` by `theta*x` over
/// `Q(P^(1/M))`, `cor3:M:P` by `(1+theta)*x`.
pub struct Preset {
    pub number: String,
    pub field: String,
    pub map: String,
}

pub fn parse_preset(s: &str) -> Result<Preset, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [name, m, p] = parts.as_slice() else {
        return Err(format!("invalid preset '{s}' (use cor2:M:P or cor3:M:P)"));
    };
    let m: usize = m.parse().map_err(|_| format!("invalid degree in preset '{s}'"))?;
    let p: u64 = p.parse().map_err(|_| format!("invalid prime in preset '{s}'"))?;
    let map = match *name {
        "cor2" => "theta*x",
        "cor3" => "(1+theta)*x",
        _ => return Err(format!("unknown preset '{name}'")),
    };
    Ok(Preset { number: "series:10:factorial".into(), field: format!("root:{m}:{p}"), map: map.into() })
}
