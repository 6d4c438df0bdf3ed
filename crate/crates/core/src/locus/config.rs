use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{Rational, RationalField};
use crate::linalg::Matrix;

/// An ordered set of `r` points of a product of projective spaces. Each point is a list of
/// factor coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    points: Vec<Vec<Vec<Rational>>>,
}

fn same_projective_point(a: &[Rational], b: &[Rational]) -> bool {
    let m = Matrix::from_rows(RationalField, vec![a.to_vec(), b.to_vec()]).expect("equal lengths");
    m.rank() < 2
}

impl PointConfig {
    /// Validates shapes, nonzero factor vectors and pairwise distinctness.
    pub fn new(points: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConfiguration("at least one point is required".into()));
        }
        let shape: Vec<usize> = points[0].iter().map(Vec::len).collect();
        if shape.is_empty() || shape.iter().any(|&s| s < 2) {
            return Err(Error::InvalidConfiguration("every factor needs at least two coordinates".into()));
        }
        for (i, p) in points.iter().enumerate() {
            if p.iter().map(Vec::len).collect::<Vec<_>>() != shape {
                return Err(Error::InvalidConfiguration(format!("point {i} has a different shape")));
            }
            if p.iter().any(|v| v.iter().all(Rational::is_zero)) {
                return Err(Error::InvalidConfiguration(format!("point {i} has a zero coordinate vector")));
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i].iter().zip(&points[j]).all(|(a, b)| same_projective_point(a, b)) {
                    return Err(Error::InvalidConfiguration(format!("points {i} and {j} coincide")));
                }
            }
        }
        Ok(PointConfig { points })
    }

    /// Single-factor points from integer coordinates.
    pub fn from_integers(points: &[Vec<i64>]) -> Result<Self> {
        Self::new(points.iter().map(|p| vec![p.iter().map(|&x| Rational::from(x)).collect()]).collect())
    }

    pub fn r(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Vec<Vec<Rational>>] {
        &self.points
    }

    /// Factor dimensions `n_f`.
    pub fn dims(&self) -> Vec<usize> {
        self.points[0].iter().map(|v| v.len() - 1).collect()
    }

    /// Coordinates of point `i` concatenated over factors.
    pub fn flat(&self, i: usize) -> Vec<Rational> {
        self.points[i].iter().flatten().cloned().collect()
    }

    /// Checks that the configuration lives on a product of spaces of the given dimensions.
    pub fn check_dims(&self, dims: &[usize]) -> Result<()> {
        if self.dims() != dims {
            return Err(Error::InvalidConfiguration(format!(
                "points live in factors of dimensions {:?}, expected {:?}",
                self.dims(),
                dims
            )));
        }
        Ok(())
    }

    /// A new configuration with the points reordered by `perm`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        Self::new(perm.iter().map(|&i| self.points[i].clone()).collect())
    }

    /// A new configuration with factor `f` of point `i` multiplied by `scales[i][f]`.
    pub fn rescaled(&self, scales: &[Vec<Rational>]) -> Result<Self> {
        let points = self
            .points
            .iter()
            .zip(scales)
            .map(|(p, s)| p.iter().zip(s).map(|(v, c)| v.iter().map(|x| x * c).collect()).collect())
            .collect();
        Self::new(points)
    }

    /// A new configuration with one more point.
    pub fn with_point(&self, point: Vec<Vec<Rational>>) -> Result<Self> {
        let mut points = self.points.clone();
        points.push(point);
        Self::new(points)
    }

    /// Parses `{"points": [[[a, b, ...], ...], ...]}` with integer or `"p/q"` entries.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        let points = value
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("expected an object with a `points` array"))?;
        let coord = |v: &Value| -> Result<Rational> {
            match v {
                Value::Number(n) => n
                    .as_i64()
                    .map(Rational::from)
                    .ok_or_else(|| Error::parse(format!("coordinate {n} is not an integer"))),
                Value::String(s) => s.parse(),
                other => Err(Error::parse(format!("invalid coordinate {other}"))),
            }
        };
        let array = |v: &Value, what: &str| -> Result<Vec<Value>> {
            v.as_array().cloned().ok_or_else(|| Error::parse(format!("expected {what} to be an array")))
        };
        let parsed = points
            .iter()
            .map(|p| {
                array(p, "a point")?
                    .iter()
                    .map(|f| array(f, "a factor")?.iter().map(coord).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }

    pub fn to_json(&self) -> String {
        let coord = |q: &Rational| -> Value {
            match (q.is_integer(), i64::try_from(q.numer())) {
                (true, Ok(v)) => json!(v),
                _ => json!(q.to_string()),
            }
        };
        let points: Vec<Value> = self
            .points
            .iter()
            .map(|p| Value::Array(p.iter().map(|f| Value::Array(f.iter().map(coord).collect())).collect()))
            .collect();
        json!({ "points": points }).to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"points":[[[1,0],[2,"1/3"]],[[0,1],[1,1]]]}"#;
        let c = PointConfig::from_json(text).unwrap();
        assert_eq!(c.r(), 2);
        assert_eq!(c.dims(), vec![1, 1]);
        assert_eq!(c.to_json(), text);
    }

    #[test]
    fn invalid_configurations() {
        assert!(PointConfig::from_integers(&[vec![1, 2], vec![2, 4]]).is_err());
        assert!(PointConfig::from_integers(&[vec![0, 0]]).is_err());
        assert!(PointConfig::from_integers(&[vec![1, 2], vec![1, 2, 3]]).is_err());
        assert!(PointConfig::from_json("{\"points\": 3}").is_err());
        assert!(PointConfig::from_json("not json").is_err());
        // Distinct in the product although equal in the first factor.
        let p = |a: [i64; 2], b: [i64; 2]| vec![a.map(Rational::from).to_vec(), b.map(Rational::from).to_vec()];
        assert!(PointConfig::new(vec![p([1, 0], [1, 0]), p([2, 0], [0, 1])]).is_ok());
        assert!(PointConfig::new(vec![p([1, 0], [1, 0]), p([2, 0], [3, 0])]).is_err());
    }
}
