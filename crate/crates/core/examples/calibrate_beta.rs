//! Finds the reconciliation efficiency that puts the TMSV key boundary at a
//! chosen distance, then reports the other resources at that efficiency.

use cvkey::analysis::{calibrate_beta, max_distance, DEFAULT_TOL_KM};
use cvkey::resources::r_from_cosh2r;
use cvkey::{ChannelParams, MismatchParams, ResourceKind, ResourceSpec};

fn main() -> cvkey::Result<()> {
    let target_km: f64 = std::env::args().nth(1).map_or(Ok(42.0), |s| s.parse()).expect("target distance in km");
    let r = r_from_cosh2r(50.0)?;
    let mm = MismatchParams::direct(0.01);
    let tmsv = ResourceSpec::new(ResourceKind::Tmsv, r, 0.9)?;
    let beta = calibrate_beta(&tmsv, &mm, &ChannelParams::default(), target_km, 1e-6)?;
    println!("beta = {beta:.6} puts the TMSV boundary at {target_km} km");

    let channel = ChannelParams::default().with_beta(beta);
    for kind in [ResourceKind::Subtracted { k: 1 }, ResourceKind::ZeroPhotonCatalysis, ResourceKind::ZpcWithLoss { p: 0.002 }] {
        let spec = ResourceSpec::new(kind, r, 0.9)?;
        let l = max_distance(&spec, &mm, &channel, DEFAULT_TOL_KM)?;
        println!("  {:<16} {l:8.2} km", kind.label());
    }
    Ok(())
}
