//! Smallest homodyne detector efficiency that still yields a key at 15 km.

use cvkey::analysis::{min_efficiency, DEFAULT_TOL_ETA};
use cvkey::resources::r_from_cosh2r;
use cvkey::{ChannelParams, Error, MismatchParams, ResourceKind, ResourceSpec};

fn main() -> cvkey::Result<()> {
    let r = r_from_cosh2r(50.0)?;
    let channel = ChannelParams::default().with_length(15.0);
    for delta in [0.01, 0.03, 0.08] {
        for kind in [ResourceKind::Tmsv, ResourceKind::Subtracted { k: 1 }, ResourceKind::ZeroPhotonCatalysis] {
            let spec = ResourceSpec::new(kind, r, 0.9)?;
            let label = kind.label();
            match min_efficiency(&spec, &MismatchParams::direct(delta), &channel, DEFAULT_TOL_ETA) {
                Ok(eta) => println!("delta={delta:<5} {label:<14} eta_min = {eta:.6}"),
                Err(Error::NoKey(why)) => println!("delta={delta:<5} {label:<14} {why}"),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}
