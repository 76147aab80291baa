//! The JSON analysis report.
//!
//! Objects are serialized with sorted keys and every float is written with
//! 17 significant digits, so equal inputs give byte-identical output.
use std::io;

use scherk_core::analysis::graph_normal;
use scherk_core::params::compact_c;
use scherk_core::weierstrass::AsymptoticConstants;
use scherk_core::{Complex, ScherkSurface};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Value};

use crate::input::Input;
use crate::verify::Check;
use crate::Result;

pub fn complex(z: Complex) -> Value {
    json!({ "re": z.re, "im": z.im })
}

fn complexes(zs: &[Complex]) -> Value {
    Value::Array(zs.iter().map(|&z| complex(z)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub value: Value,
}

impl AnalysisReport {
    pub fn new(input: &Input, sf: &ScherkSurface, checks: &[Check]) -> Result<AnalysisReport> {
        let c = &sf.coords;
        let d = &sf.data;
        let frame = &sf.frame;
        let fixed = sf.asymptotic_constants();
        let variant = AsymptoticConstants::over_sin_p(d);
        let center = sf.center_report()?;
        let gating = checks.iter().filter(|c| c.gating());
        let value = json!({
            "input": serde_json::to_value(input)?,
            "normalization": {
                "vertices": complexes(&sf.quad.vertices),
                "reversed": sf.quad.reversed,
                "relabeled": frame.relabeled,
                "pitot_residual": sf.quad.pitot_residual,
                "scale": complex(frame.similarity.scale),
                "shift": complex(frame.similarity.shift),
                "length_scale": frame.length_scale(),
                "normalized_vertices": complexes(&sf.normalized_vertices()),
                "z": complex(frame.z),
                "w": complex(frame.w),
            },
            "coordinates": { "m": c.m, "s": c.s, "t": c.t, "j": c.j, "k": c.k },
            "p": d.p,
            "e_ip": complex(d.e_ip),
            "z0": complex(d.z0),
            "x": complex(d.x),
            "sqrt_x": complex(d.sqrt_x),
            "constants": {
                "b": complex(d.b),
                "z": complex(d.z_scale),
                "a": complex(d.a),
                "c": complex(d.c),
                "c_compact": complex(compact_c(c)),
                "lambda": fixed.lambda,
                "c_k": fixed.c.to_vec(),
                "slopes": fixed.slopes().to_vec(),
                "lambda_over_sin_p": variant.lambda,
                "c_k_over_sin_p": variant.c.to_vec(),
            },
            "poles": complexes(&sf.kernel.poles),
            "kernel_residues": complexes(&sf.kernel.residues),
            "c0": complex(center.c0),
            "center": {
                "q0": complex(center.q0),
                "q0_prime": complex(center.q0_prime),
                "h0_prime": complex(center.h0_prime),
                "curvature_normalized": center.curvature_normalized,
                "curvature": center.curvature_original,
                "curvature_bound": center.curvature_bound,
                "normal": center.normal.to_vec(),
                "graph_normal": graph_normal(center.q0).to_vec(),
                "mixed_derivative": center.mixed_derivative,
                "alpha": center.alpha,
            },
            "verification": {
                "checks": serde_json::to_value(checks)?,
                "all_gating_passed": gating.clone().all(|c| c.pass),
                "gating_failures": gating.filter(|c| !c.pass).map(|c| c.name).collect::<Vec<_>>(),
            },
        });
        Ok(AnalysisReport { value })
    }

    pub fn to_json(&self) -> Result<String> {
        to_json(&self.value)
    }
}

/// Pretty JSON with floats as `{:.16e}`.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloats::default());
    value.serialize(&mut ser)?;
    out.push(b'\n');
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

#[derive(Default)]
struct FixedFloats {
    pretty: PrettyFormatter<'static>,
}

impl Formatter for FixedFloats {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value.into())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits_and_keys_are_sorted() {
        let text = to_json(&json!({ "b": 0.1, "a": [1.0, -2.5e-300] })).unwrap();
        assert_eq!(
            text,
            "{\n  \"a\": [\n    1.0000000000000000e0,\n    -2.5000000000000000e-300\n  ],\n  \"b\": 1.0000000000000001e-1\n}\n"
        );
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["b"].as_f64(), Some(0.1));
    }
}
