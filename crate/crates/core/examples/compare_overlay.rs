//! Score model curves against a (synthetic) measurement and export the
//! overlay plot.

use beambuckle::compare::{export_overlay, rms_deviation, CurveSource, ExperimentCurve, ExperimentPoint, ModelCurve};
use beambuckle::elastica::Spacing;
use beambuckle::{critical_load, sweep, BeamGeometry, MaterialModel, PropertyMode, SweepOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let geom = BeamGeometry::reference_beam();
    let mat = MaterialModel::polysilicon();
    let p_cr = critical_load(&geom, mat.young_modulus(mat.t_0));

    let mut curves = Vec::new();
    for (mode, source) in [
        (PropertyMode::Constant, CurveSource::AnalyticConst),
        (PropertyMode::TemperatureDependent, CurveSource::AnalyticTdep),
    ] {
        let opts = SweepOptions {
            n: 300,
            spacing: Spacing::Geometric,
            mode,
            ..SweepOptions::default()
        };
        let pts = sweep(&geom, &mat, 0.5 * p_cr, 60.0 * p_cr, &opts)?;
        curves.push(ModelCurve::from_sweep(source.as_str(), source, &pts)?);
    }

    // Stand-in for digitized data: the tdep curve plus a small wobble.
    let tdep = &curves[1];
    let points = (0..12)
        .map(|i| {
            let t = 100.0 + 70.0 * i as f64;
            let d = tdep.interpolate(t).expect("inside sweep") * (1.0 + 0.02 * (i as f64).sin());
            ExperimentPoint {
                temperature: t,
                deflection: d,
                current: Some(1e-3 * (i + 1) as f64),
            }
        })
        .collect();
    let exp = ExperimentCurve::new("measured", points)?;

    for c in &curves {
        let r = rms_deviation(c, &exp)?;
        println!("{:>15}: RMS = {:.4} µm over {} points", c.label, r.rms * 1e6, r.included());
    }

    let out = std::env::temp_dir().join("beambuckle_overlay");
    let (csv, svg) = export_overlay(&curves, Some(&exp), &out)?;
    println!("wrote {} and {}", csv.display(), svg.display());
    Ok(())
}
