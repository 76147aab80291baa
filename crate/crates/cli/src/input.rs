//! Input documents: either four vertices or the hyperbolic coordinates.
//!
//! ```json
//! {"vertices": [[-1, 0], [0.31, 0.29], [1, 0], [0.46, 1.12]]}
//! {"m": 0.3, "s": 1.0, "t": 0.3}
//! ```
use std::io::Read;
use std::path::Path;

use scherk_core::geometry::DEFAULT_PITOT_TOL;
use scherk_core::{Complex, ScherkSurface};
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Input {
    Vertices { vertices: [[f64; 2]; 4] },
    Params { m: f64, s: f64, t: f64 },
}

impl Input {
    pub fn from_json(text: &str) -> Result<Input> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Input(format!(
                "expected {{\"vertices\": [[x, y]; 4]}} or {{\"m\", \"s\", \"t\"}} ({e})"
            ))
        })
    }

    /// Reads a file, or standard input when `path` is `-`.
    pub fn from_path(path: &Path) -> Result<Input> {
        let mut text = String::new();
        if path.as_os_str() == "-" {
            std::io::stdin().read_to_string(&mut text)?;
        } else {
            text = std::fs::read_to_string(path)?;
        }
        Input::from_json(&text)
    }

    /// Parses `m,s,t`.
    pub fn from_triple(text: &str) -> Result<Input> {
        let values: Vec<f64> = text
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| CliError::Input(format!("--params expects m,s,t ({e})")))?;
        match values[..] {
            [m, s, t] => Ok(Input::Params { m, s, t }),
            _ => Err(CliError::Input(format!(
                "--params expects three numbers m,s,t, got {}",
                values.len()
            ))),
        }
    }

    pub fn surface(&self, tol_pitot: Option<f64>) -> Result<ScherkSurface> {
        let tol = tol_pitot.unwrap_or(DEFAULT_PITOT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::Input(format!("--tol-pitot must be positive, got {tol}")));
        }
        Ok(match *self {
            Input::Vertices { vertices } => {
                ScherkSurface::from_vertices(vertices.map(|[x, y]| Complex::new(x, y)), tol)?
            }
            Input::Params { m, s, t } => ScherkSurface::from_params(m, s, t)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        let v = Input::from_json(r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#).unwrap();
        assert!(matches!(v, Input::Vertices { .. }));
        let p = Input::from_json(r#"{"m": 0.3, "s": 1, "t": 0.3}"#).unwrap();
        assert_eq!(p, Input::Params { m: 0.3, s: 1.0, t: 0.3 });
        assert!(Input::from_json(r#"{"vertices": [[0,0],[1,0]]}"#).is_err());
        assert_eq!(Input::from_triple("0.3, 1,-0.3").unwrap(), Input::Params { m: 0.3, s: 1.0, t: -0.3 });
        assert!(Input::from_triple("0.3,1").is_err());
        assert!(Input::from_triple("a,b,c").is_err());
    }

    #[test]
    fn square_is_accepted() {
        let v = Input::from_json(r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#).unwrap();
        let s = v.surface(None).unwrap();
        assert!(s.quad.pitot_residual.abs() < 1e-15);
        assert!(matches!(
            v.surface(Some(-1.0)),
            Err(CliError::Input(_))
        ));
    }
}
