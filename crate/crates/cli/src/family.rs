use std::collections::BTreeMap;
use std::str::FromStr;

use clap::Args;
use eof_core::FamilyParams;

use crate::error::{invalid, CliResult};

pub const FAMILY_NAMES: &str = "mc2, sigma, lemma3, isotropic, isotropic-member, werner, sep-tags";

/// A named family, or the isotropic OD member ket (which is not a state family).
#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Params(FamilyParams),
    IsotropicMember { d: usize },
}

impl FamilySpec {
    pub fn params(&self) -> CliResult<&FamilyParams> {
        match self {
            FamilySpec::Params(p) => Ok(p),
            FamilySpec::IsotropicMember { .. } => {
                Err(invalid("isotropic-member names a single ket, not a state family; use isotropic"))
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Params(p) => p.name(),
            FamilySpec::IsotropicMember { .. } => "isotropic-member",
        }
    }
}

/// Family flags shared by several commands. Angles are radians.
#[derive(Args, Debug, Clone, Default)]
pub struct FamilyArgs {
    /// One of: mc2, sigma, lemma3, isotropic, isotropic-member, werner, sep-tags
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub y: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    /// Local dimension
    #[arg(long)]
    pub d: Option<usize>,
    /// Fidelity (isotropic) or swap expectation (werner)
    #[arg(long = "F", allow_negative_numbers = true)]
    pub fidelity: Option<f64>,
    /// Phase base of the isotropic coefficient matrix
    #[arg(long)]
    pub m: Option<u64>,
    /// Cut index of the rank-2 MC family
    #[arg(long)]
    pub f: Option<usize>,
    /// Schmidt coefficients: `uniform` or a comma-separated list
    #[arg(long)]
    pub c: Option<String>,
}

impl FamilyArgs {
    pub fn is_set(&self) -> bool {
        self.family.is_some()
    }

    pub fn spec(&self) -> CliResult<FamilySpec> {
        let name = self.family.as_deref().ok_or_else(|| invalid("missing --family"))?;
        let mut kv = BTreeMap::new();
        let floats = [
            ("p", self.p),
            ("theta", self.theta),
            ("q", self.q),
            ("x", self.x),
            ("y", self.y),
            ("z", self.z),
            ("F", self.fidelity),
        ];
        for (k, v) in floats {
            if let Some(v) = v {
                kv.insert(k.to_string(), v.to_string());
            }
        }
        if let Some(d) = self.d {
            kv.insert("d".into(), d.to_string());
        }
        if let Some(m) = self.m {
            kv.insert("m".into(), m.to_string());
        }
        if let Some(f) = self.f {
            kv.insert("f".into(), f.to_string());
        }
        if let Some(c) = &self.c {
            kv.insert("c".into(), c.clone());
        }
        build(name, kv)
    }
}

/// Parses `name:key=value,key=value`; coefficient lists use `/` inside a
/// factor, e.g. `lemma3:p=0.5,f=2,c=uniform,d=3`.
pub fn parse_factor(spec: &str) -> CliResult<FamilySpec> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut kv = BTreeMap::new();
    for part in rest.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| invalid(format!("factor `{spec}`: expected key=value, got `{part}`")))?;
        if kv.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(invalid(format!("factor `{spec}`: `{k}` given twice")));
        }
    }
    build(name.trim(), kv)
}

fn take<T: FromStr>(kv: &mut BTreeMap<String, String>, key: &str) -> CliResult<Option<T>> {
    kv.remove(key)
        .map(|v| v.parse::<T>().map_err(|_| invalid(format!("`{key}` has an invalid value `{v}`"))))
        .transpose()
}

fn need<T: FromStr>(kv: &mut BTreeMap<String, String>, key: &str, family: &str) -> CliResult<T> {
    take(kv, key)?.ok_or_else(|| invalid(format!("family {family} needs `{key}`")))
}

fn coefficients(spec: &str, d: Option<usize>) -> CliResult<Vec<f64>> {
    if spec == "uniform" {
        let d = d.ok_or_else(|| invalid("`c=uniform` needs `d`"))?;
        return Ok(vec![1.0 / (d as f64).sqrt(); d]);
    }
    let coeffs = spec
        .split([',', '/'])
        .map(|s| s.trim().parse::<f64>().map_err(|_| invalid(format!("coefficient `{s}` is not a number"))))
        .collect::<CliResult<Vec<f64>>>()?;
    if let Some(d) = d {
        if d != coeffs.len() {
            return Err(invalid(format!("{} coefficients given for d = {d}", coeffs.len())));
        }
    }
    Ok(coeffs)
}

/// Builds a family from named parameters; every key must be used.
pub fn build(name: &str, mut kv: BTreeMap<String, String>) -> CliResult<FamilySpec> {
    let kv = &mut kv;
    let spec = match name {
        "mc2" => FamilySpec::Params(FamilyParams::McTwoQubit {
            p: take(kv, "p")?.unwrap_or(0.5),
            theta: need(kv, "theta", name)?,
        }),
        "sigma" => FamilySpec::Params(FamilyParams::Sigma {
            q: take(kv, "q")?.unwrap_or(0.5),
            p: need(kv, "p", name)?,
            x: need(kv, "x", name)?,
            y: need(kv, "y", name)?,
            z: need(kv, "z", name)?,
        }),
        "lemma3" => {
            let d = take(kv, "d")?;
            let c: String = need(kv, "c", name)?;
            FamilySpec::Params(FamilyParams::Lemma3Mc {
                p: need(kv, "p", name)?,
                coeffs: coefficients(&c, d)?,
                f: need(kv, "f", name)?,
            })
        }
        "isotropic" => FamilySpec::Params(FamilyParams::Isotropic {
            d: need(kv, "d", name)?,
            fidelity: need(kv, "F", name)?,
            m: take(kv, "m")?.unwrap_or(2),
        }),
        "isotropic-member" => FamilySpec::IsotropicMember { d: need(kv, "d", name)? },
        "werner" => {
            FamilySpec::Params(FamilyParams::Werner { d: need(kv, "d", name)?, fidelity: need(kv, "F", name)? })
        }
        "sep-tags" => FamilySpec::Params(FamilyParams::SeparableTags { d: take(kv, "d")?.unwrap_or(2) }),
        other => return Err(invalid(format!("unknown family `{other}`; expected one of {FAMILY_NAMES}"))),
    };
    if let Some(k) = kv.keys().next() {
        return Err(invalid(format!("parameter `{k}` does not apply to family {name}")));
    }
    match &spec {
        FamilySpec::Params(p) => p.validate()?,
        FamilySpec::IsotropicMember { d } => {
            eof_core::entanglement::eof_isotropic_member(*d)?;
        }
    }
    Ok(spec)
}

/// Inclusive linear grid `start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 }).collect()
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, stop, count] = parts[..] else {
            return Err(format!("grid `{s}` must be start:stop:count"));
        };
        let num = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("`{x}` is not a number"));
        let count: usize = count.trim().parse().map_err(|_| format!("`{count}` is not a count"))?;
        if count == 0 {
            return Err("grid count must be >= 1".into());
        }
        let grid = Grid { start: num(start)?, stop: num(stop)?, count };
        if !grid.start.is_finite() || !grid.stop.is_finite() {
            return Err(format!("grid `{s}` has non-finite bounds"));
        }
        Ok(grid)
    }
}

/// Comma-separated weights.
pub fn parse_weights(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|w| w.trim().parse::<f64>().map_err(|_| invalid(format!("weight `{w}` is not a number"))))
        .collect()
}
