//! Key rate against fibre length for each resource, printed as a small
//! table every 25 km.

use cvkey::analysis::{sweep, SweepAxis, SweepSpec};
use cvkey::resources::r_from_cosh2r;
use cvkey::{ChannelParams, MismatchParams, ResourceKind, ResourceSpec};

fn main() -> cvkey::Result<()> {
    let r = r_from_cosh2r(50.0)?;
    let kinds = [
        ResourceKind::Tmsv,
        ResourceKind::Subtracted { k: 1 },
        ResourceKind::ZeroPhotonCatalysis,
    ];

    let mut columns = Vec::new();
    for kind in kinds {
        let spec = SweepSpec {
            axis: SweepAxis::DistanceKm,
            start: 0.0,
            stop: 200.5,
            step: 25.0,
            resource: ResourceSpec::new(kind, r, 0.9)?,
            mismatch: MismatchParams::direct(0.01),
            channel: ChannelParams::default(),
        };
        columns.push(sweep(&spec)?);
    }

    print!("{:>8}", "L_km");
    for kind in kinds {
        print!("{:>16}", kind.label());
    }
    println!();
    for i in 0..columns[0].len() {
        print!("{:>8.1}", columns[0][i].axis_value);
        for col in &columns {
            print!("{:>16.6e}", col[i].key_rate);
        }
        println!();
    }
    Ok(())
}
