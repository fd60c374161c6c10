//! Two-node corotational Timoshenko beam in the plane.
//!
//! Nodal DOFs are `[u, v, θ]`. The element follows the rigid rotation of its
//! chord; in the chord frame it carries a uniform axial force and two end
//! moments with the exact (shear-flexible) Timoshenko bending stiffness.

/// Section and thermal data for one element at one temperature.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Section {
    pub ea: f64,
    pub ei: f64,
    /// k_s · G · A
    pub ksga: f64,
    /// Free thermal strain α(T)(T − T₀)
    pub thermal_strain: f64,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct ElementResponse {
    pub force: [f64; 6],
    pub tangent: [[f64; 6]; 6],
}

/// Internal force vector and consistent tangent for an element whose
/// undeformed chord has length `l0` and lies along +x.
pub(crate) fn corotational(l0: f64, d: &[f64; 6], sec: &Section) -> ElementResponse {
    let du = d[3] - d[0];
    let dv = d[4] - d[1];
    let dx = l0 + du;
    let dy = dv;
    let len = dx.hypot(dy);
    let c = dx / len;
    let s = dy / len;
    // ℓ − ℓ0 without cancellation
    let extension = (2.0 * l0 * du + du * du + dv * dv) / (len + l0);
    let chord_rotation = dy.atan2(dx);
    let t1 = d[2] - chord_rotation;
    let t2 = d[5] - chord_rotation;

    let phi = 12.0 * sec.ei / (sec.ksga * l0 * l0);
    let kb = sec.ei / (l0 * (1.0 + phi));
    let (k11, k12) = (kb * (4.0 + phi), kb * (2.0 - phi));
    let axial = sec.ea * (extension / l0 - sec.thermal_strain);
    let m1 = k11 * t1 + k12 * t2;
    let m2 = k12 * t1 + k11 * t2;

    let r = [-c, -s, 0.0, c, s, 0.0];
    let z = [s, -c, 0.0, -s, c, 0.0];
    let mut b1 = [0.0; 6];
    let mut b2 = [0.0; 6];
    for k in 0..6 {
        b1[k] = -z[k] / len;
        b2[k] = -z[k] / len;
    }
    b1[2] += 1.0;
    b2[5] += 1.0;

    let mut force = [0.0; 6];
    for k in 0..6 {
        force[k] = r[k] * axial + b1[k] * m1 + b2[k] * m2;
    }

    let ka = sec.ea / l0;
    let geo_n = axial / len;
    let geo_m = (m1 + m2) / (len * len);
    let mut tangent = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            tangent[i][j] = ka * r[i] * r[j]
                + k11 * (b1[i] * b1[j] + b2[i] * b2[j])
                + k12 * (b1[i] * b2[j] + b2[i] * b1[j])
                + geo_n * z[i] * z[j]
                + geo_m * (r[i] * z[j] + z[i] * r[j]);
        }
    }
    ElementResponse { force, tangent }
}
