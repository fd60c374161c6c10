use beambuckle::fem::{NewtonTolerances, DOF_PER_NODE};
use beambuckle::{
    build_model, critical_temperature, linear_static_check, solve_path, tangent_consistency, BeamGeometry, FemModel,
    FemSolutionPath, MaterialModel,
};

fn beam() -> BeamGeometry {
    BeamGeometry::reference_beam()
}

fn default_path(mat: &MaterialModel, n_elems: usize, t_max: f64, n_steps: usize) -> (FemModel, FemSolutionPath) {
    let model = FemModel::with_imperfection_ratio(beam(), n_elems, mat, 1e-3).unwrap();
    let path = solve_path(&model, mat, t_max, n_steps, &NewtonTolerances::default()).unwrap();
    (model, path)
}

#[test]
fn linear_point_load_matches_timoshenko_formula() {
    let mat = MaterialModel::polysilicon_constant();
    let g = beam();
    let e = mat.young_modulus(20.0);
    let ks_g_a = 5.0 / 6.0 * e / (2.0 * (1.0 + mat.nu)) * g.area();
    let f = 1e-6;
    let exact = f * g.length.powi(3) / (192.0 * e * g.second_moment()) + f * g.length / (4.0 * ks_g_a);
    for n in [4, 16, 64] {
        let model = build_model(g, n, 0.0).unwrap();
        let got = linear_static_check(&model, e, mat.nu, f).unwrap();
        assert!(((got - exact) / exact).abs() < 5e-3, "n = {n}: {got} vs {exact}");
    }
}

#[test]
fn deflection_field_is_symmetric() {
    let mat = MaterialModel::polysilicon();
    let (model, path) = default_path(&mat, 64, 420.0, 200);
    let l = beam().length;
    let last = model.n_nodes() - 1;
    for step in &path.steps {
        let d = &step.displacements;
        for i in 0..=last {
            let (a, b) = (DOF_PER_NODE * i, DOF_PER_NODE * (last - i));
            assert!((d[a] + d[b]).abs() <= 1e-10 * l, "u at node {i}, T = {}", step.temperature);
            assert!((d[a + 1] - d[b + 1]).abs() <= 1e-10 * l, "v at node {i}");
            assert!((d[a + 2] + d[b + 2]).abs() <= 1e-10, "θ at node {i}");
        }
    }
}

#[test]
fn recorded_states_are_in_equilibrium() {
    let mat = MaterialModel::polysilicon();
    let (model, path) = default_path(&mat, 32, 900.0, 200);
    let ea = mat.young_modulus(900.0) * beam().area();
    for s in &path.steps {
        let scale = ea * mat.thermal_strain(s.temperature).abs().max(1e-6);
        let r = model.equilibrium_residual(&mat, s.temperature, &s.displacements);
        assert!(r <= 1e-7 * scale, "T = {}: residual {r:e}", s.temperature);
    }
}

#[test]
fn mesh_refinement_changes_post_buckling_deflection_little() {
    let mat = MaterialModel::polysilicon();
    let (_, coarse) = default_path(&mat, 64, 420.0, 200);
    let (_, fine) = default_path(&mat, 128, 420.0, 200);
    let t_cr = critical_temperature(&beam(), &mat);
    for t in [t_cr + 20.0, 150.0, 300.0, 420.0] {
        let (a, b) = (coarse.deflection_at(t).unwrap(), fine.deflection_at(t).unwrap());
        assert!(((a - b) / b).abs() < 5e-3, "T = {t}: {a} vs {b}");
    }
}

#[test]
fn path_is_smooth_past_onset() {
    let mat = MaterialModel::polysilicon();
    let (_, path) = default_path(&mat, 64, 900.0, 400);
    let t_cr = critical_temperature(&beam(), &mat);
    let g: Vec<f64> = path.deflections();
    let incs: Vec<f64> = g.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    for i in 1..incs.len() - 1 {
        if path.steps[i].temperature < t_cr + 10.0 {
            continue;
        }
        let neighbors = 0.5 * (incs[i - 1] + incs[i + 1]);
        assert!(incs[i] <= 5.0 * neighbors, "jump at T = {}", path.steps[i + 1].temperature);
    }
    assert!(g.windows(2).all(|w| w[1] >= w[0]), "deflection decreases somewhere");
}

#[test]
fn temperature_column_is_monotone_and_starts_at_reference() {
    let mat = MaterialModel::polysilicon();
    let (_, path) = default_path(&mat, 16, 420.0, 50);
    assert_eq!(path.steps.len(), 51);
    assert_eq!(path.steps[0].temperature, 20.0);
    assert_eq!(path.steps[50].temperature, 420.0);
    assert!(path.temperatures().windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn tangent_consistent_on_buckled_states() {
    let mat = MaterialModel::polysilicon();
    let (model, path) = default_path(&mat, 16, 700.0, 70);
    for s in path.steps.iter().skip(10).step_by(20) {
        let err = tangent_consistency(&model, &mat, s.temperature, &s.displacements);
        assert!(err <= 1e-5, "T = {}: {err:e}", s.temperature);
    }
}

#[test]
fn tdep_path_lies_left_of_constant_path() {
    let mat = MaterialModel::polysilicon();
    let frozen = mat.frozen_at(mat.t_0);
    let (_, tdep) = default_path(&mat, 64, 900.0, 300);
    let (_, cons) = default_path(&frozen, 64, 900.0, 300);
    let t = beam().thickness;
    let top = cons.deflections().last().copied().unwrap();
    for k in 0..100 {
        let level = 0.05 * t + (top - 0.05 * t) * k as f64 / 99.0;
        let (a, b) = (
            tdep.temperature_at_deflection(level).unwrap(),
            cons.temperature_at_deflection(level).unwrap(),
        );
        assert!(a <= b + 1e-9, "γ = {level:e}: tdep {a} > const {b}");
    }
}

#[test]
fn independent_solves_can_run_concurrently() {
    let mat = MaterialModel::polysilicon();
    let serial = default_path(&mat, 16, 300.0, 40).1;
    let parallel: Vec<FemSolutionPath> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..4).map(|_| s.spawn(|| default_path(&mat, 16, 300.0, 40).1)).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert!(parallel.iter().all(|p| p == &serial));
}
