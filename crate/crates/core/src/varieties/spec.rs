use serde::Deserialize;

use super::{IdealVariety, ParamMap, Variety};
use crate::error::{Error, Result};
use crate::fields::Rational;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Number {
    Int(i64),
    Text(String),
}

impl Number {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            Number::Int(v) => Ok(Rational::from(*v)),
            Number::Text(s) => s.parse(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Body {
    kind: String,
    n: Option<OneOrMany>,
    d: Option<OneOrMany>,
    coefficients: Option<Vec<Vec<Number>>>,
    generators: Option<Vec<String>>,
    t: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    variety: Body,
}

fn scalar(v: &Option<OneOrMany>, key: &str) -> Result<usize> {
    match v {
        Some(OneOrMany::One(x)) => Ok(*x),
        Some(OneOrMany::Many(_)) => Err(Error::InvalidVariety(format!("`{key}` must be an integer"))),
        None => Err(Error::InvalidVariety(format!("missing `{key}`"))),
    }
}

fn list(v: &Option<OneOrMany>, key: &str) -> Result<Vec<usize>> {
    match v {
        Some(OneOrMany::Many(x)) => Ok(x.clone()),
        Some(OneOrMany::One(x)) => Ok(vec![*x]),
        None => Err(Error::InvalidVariety(format!("missing `{key}`"))),
    }
}

/// Parses a `[variety]` TOML document.
///
/// ```toml
/// [variety]
/// kind = "segre-veronese"   # veronese | segre-veronese | rational-curve | del-pezzo | ideal
/// n = [1, 1]
/// d = [2, 2]
/// ```
pub fn parse_variety_spec(text: &str) -> Result<Variety> {
    let doc: Document = toml::from_str(text)?;
    let b = doc.variety;
    match b.kind.as_str() {
        "veronese" => Ok(Variety::Param(ParamMap::veronese(scalar(&b.n, "n")?, scalar(&b.d, "d")? as u32)?)),
        "segre-veronese" => {
            let dims = list(&b.n, "n")?;
            let degrees: Vec<u32> = list(&b.d, "d")?.into_iter().map(|d| d as u32).collect();
            Ok(Variety::Param(ParamMap::segre_veronese(&dims, &degrees)?))
        }
        "rational-curve" => {
            let rows = b.coefficients.ok_or_else(|| Error::InvalidVariety("missing `coefficients`".into()))?;
            let rows = rows
                .iter()
                .map(|r| r.iter().map(Number::to_rational).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Ok(Variety::Param(ParamMap::rational_curve(&rows)?))
        }
        "del-pezzo" => {
            let t = b.t.ok_or_else(|| Error::InvalidVariety("missing `t`".into()))?;
            Ok(Variety::Param(ParamMap::del_pezzo(t)?))
        }
        "ideal" => {
            let n = scalar(&b.n, "n")?;
            let gens = b.generators.ok_or_else(|| Error::InvalidVariety("missing `generators`".into()))?;
            Ok(Variety::Ideal(IdealVariety::from_text(n, &gens)?))
        }
        other => Err(Error::InvalidVariety(format!("unknown kind `{other}`"))),
    }
}
