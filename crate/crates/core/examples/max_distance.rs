//! Maximum transmission distance for each resource as the mode-mismatch
//! noise grows.

use cvkey::analysis::{max_distance, DEFAULT_TOL_KM};
use cvkey::resources::r_from_cosh2r;
use cvkey::{ChannelParams, Error, MismatchParams, ResourceKind, ResourceSpec};

fn main() -> cvkey::Result<()> {
    let r = r_from_cosh2r(50.0)?;
    let kinds = [
        ResourceKind::Tmsv,
        ResourceKind::Subtracted { k: 1 },
        ResourceKind::ZeroPhotonCatalysis,
        ResourceKind::ZpcWithLoss { p: 0.002 },
    ];
    for delta in [0.0, 0.01, 0.02, 0.05] {
        println!("delta = {delta}");
        for kind in kinds {
            let spec = ResourceSpec::new(kind, r, 0.9)?;
            let mm = MismatchParams::direct(delta);
            match max_distance(&spec, &mm, &ChannelParams::default(), DEFAULT_TOL_KM) {
                Ok(l) => println!("  {:<16} {l:8.2} km", kind.label()),
                Err(Error::NoKey(why)) => println!("  {:<16} {why}", kind.label()),
                Err(Error::Unbracketed { hi, .. }) => println!("  {:<16} beyond {hi} km", kind.label()),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}
