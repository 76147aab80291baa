use std::f64::consts::PI;

use proptest::prelude::*;
use scherk_core::analysis::{center_curvature, center_normal, stereographic};
use scherk_core::geometry::{construct_quad, hyperbolic_coordinates, normalize, HyperbolicCoords};
use scherk_core::harmonic::moebius;
use scherk_core::params::{
    angle_parameter, cos_p, cos_p_from_side_coefficients, e_ip_ratio, moebius_center,
    moebius_center_vertex_form, unimodular_factor, unimodular_factor_vertex_form, vertex_form_e,
};
use scherk_core::weierstrass::gauss_map_q;
use scherk_core::{mesh, Complex, Error, ScherkSurface};

fn coords() -> impl Strategy<Value = HyperbolicCoords> {
    (0.0..1.45f64, -3.0..3.0f64, 0.02..3.5f64).prop_map(|(m, t, gap)| HyperbolicCoords::new(m, t + gap, t))
}

fn disk_point() -> impl Strategy<Value = Complex> {
    (0.0..0.995f64, 0.0..2.0 * PI).prop_map(|(r, th)| Complex::from_polar(r, th))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn vertex_form_e_matches_closed_form(c in coords()) {
        match vertex_form_e(c.z(), c.w()) {
            Ok(e) => prop_assert!((e - cos_p(&c)).abs() < 1e-10 * (1.0 + e.abs())),
            Err(err) => prop_assert_eq!(err, Error::DivisionDegenerate),
        }
    }

    #[test]
    fn constructed_quads_are_pitot(c in coords()) {
        let q = construct_quad(c.m, c.s, c.t).unwrap();
        prop_assert!(q.pitot_residual.abs() < 1e-12 * q.perimeter());
        prop_assert!(!q.reversed);
    }
}

proptest! {
    #[test]
    fn coordinates_round_trip(c in coords(), angle in 0.0..2.0 * PI, scale in 0.1..10.0f64, dx in -5.0..5.0f64) {
        let base = construct_quad(c.m, c.s, c.t).unwrap();
        let rot = Complex::from_polar(scale, angle);
        let moved = base.vertices.map(|b| rot * b + Complex::new(dx, -dx));
        let sf = ScherkSurface::from_vertices(moved, 1e-9).unwrap();
        prop_assert!((sf.coords.m - c.m).abs() < 1e-7);
        prop_assert!((sf.coords.j - c.j).abs() < 1e-7);
        prop_assert!((sf.coords.k - c.k).abs() < 1e-7);
        prop_assert!((sf.frame.length_scale() - scale).abs() < 1e-9 * scale);
    }

    #[test]
    fn reversed_input_is_the_same_quad(c in coords()) {
        let q = construct_quad(c.m, c.t, c.s).unwrap();
        prop_assert!(q.reversed);
        let hc = hyperbolic_coordinates(normalize(&q).z, normalize(&q).w).unwrap();
        prop_assert!(hc.s > hc.t);
        prop_assert!((hc.j - c.j).abs() < 1e-8);
    }

    #[test]
    fn angle_parameter_forms_agree(c in coords()) {
        let (p, e_ip) = angle_parameter(&c).unwrap();
        prop_assert!(p > 0.0 && p < PI);
        prop_assert!((e_ip - e_ip_ratio(c.j)).norm() < 1e-12);
        prop_assert!((p.cos() - cos_p(&c)).abs() < 1e-12);
        let b = [Complex::new(-1.0, 0.0), c.z(), Complex::new(1.0, 0.0), c.w()];
        if let Ok(e) = cos_p_from_side_coefficients(&b) {
            prop_assert!((e - cos_p(&c)).abs() < 1e-8 * (1.0 + e.abs()));
        }
    }

    #[test]
    fn center_and_unimodular_factor(c in coords()) {
        let z0 = moebius_center(&c);
        let (x, _) = unimodular_factor(&c);
        let (p, e_ip) = angle_parameter(&c).unwrap();
        prop_assert!(z0.norm() < 1.0);
        prop_assert!((x.norm() - 1.0).abs() < 1e-12);
        if let Ok(raw) = moebius_center_vertex_form(c.z(), c.w(), e_ip) {
            prop_assert!((raw - z0).norm() < 1e-8 * (1.0 + raw.norm()));
        }
        if let Ok(raw) = unimodular_factor_vertex_form(c.z(), c.w(), p) {
            prop_assert!((raw - x).norm() < 1e-8);
        }
    }

    #[test]
    fn gauss_map_squares_to_dilatation(c in coords(), z in disk_point()) {
        let sf = ScherkSurface::from_params(c.m, c.s, c.t).unwrap();
        let q = gauss_map_q(z, &sf.data);
        let mu = sf.parts.dilatation(z).unwrap();
        prop_assert!((q * q - mu).norm() < 1e-10 * (1.0 + mu.norm()));
        let phi = moebius(z, sf.data.z0);
        prop_assert!((mu - sf.data.x * phi * phi).norm() < 1e-10 * (1.0 + mu.norm()));
        prop_assert!(sf.parts.jacobian(z).unwrap() > 0.0);
    }

    #[test]
    fn residues_cancel(c in coords()) {
        let sf = ScherkSurface::from_params(c.m, c.s, c.t).unwrap();
        let h: Complex = sf.parts.h_residues.iter().sum();
        let g: Complex = sf.parts.g_residues.iter().sum();
        let k: Complex = sf.kernel.residues.iter().sum();
        prop_assert!(h.norm() < 1e-14 && g.norm() < 1e-14);
        prop_assert!(k.norm() < 1e-12 * (1.0 + sf.data.c.norm()));
        for (i, r) in sf.kernel.residues.iter().enumerate() {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!(r.re.abs() < 1e-10 * r.norm());
            prop_assert!(sign * r.im > 0.0);
        }
    }

    #[test]
    fn curvature_decreases_with_m(c in coords()) {
        let at_zero = center_curvature(&HyperbolicCoords::new(0.0, c.s, c.t));
        prop_assert!(center_curvature(&c).abs() <= at_zero.abs() * (1.0 + 1e-14));
    }

    #[test]
    fn normal_is_stereographic(c in coords()) {
        let sf = ScherkSurface::from_params(c.m, c.s, c.t).unwrap();
        let n = center_normal(&sf.coords);
        let st = stereographic(gauss_map_q(Complex::default(), &sf.data));
        for i in 0..3 {
            prop_assert!((n[i] - st[i]).abs() < 1e-10);
        }
        prop_assert!(n[2] > 0.0);
    }
}

#[test]
fn mesh_projection_is_injective() {
    let sf = ScherkSurface::from_params(0.3, 1.0, 0.3).unwrap();
    let m = mesh::sample_disk(&sf, 30, 64, 0.99, mesh::DEFAULT_H_MAX).unwrap();
    let mut pts: Vec<(f64, f64, f64)> = m
        .vertices
        .iter()
        .zip(&m.clamp)
        .filter(|(_, c)| **c == mesh::Clamp::None)
        .map(|(v, _)| (v[0], v[1], v[2]))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            if b.0 - a.0 > 1e-9 {
                break;
            }
            let close = (a.1 - b.1).abs() < 1e-9;
            assert!(!close || (a.2 - b.2).abs() < 1e-9);
        }
    }
}
