//! How a small chance of losing the ancilla photon erodes the advantage of
//! zero-photon catalysis.

use cvkey::analysis::{max_distance, DEFAULT_TOL_KM};
use cvkey::resources::r_from_cosh2r;
use cvkey::{ChannelParams, Error, MismatchParams, ResourceKind, ResourceSpec};

fn main() -> cvkey::Result<()> {
    let r = r_from_cosh2r(50.0)?;
    let mm = MismatchParams::direct(0.01);
    for p in [0.0, 0.0005, 0.001, 0.002, 0.005, 0.01] {
        let spec = ResourceSpec::new(ResourceKind::ZpcWithLoss { p }, r, 0.9)?;
        let at_15 = cvkey::secret_key_rate(&spec, &mm, &ChannelParams::default().with_length(15.0))?;
        let reach = match max_distance(&spec, &mm, &ChannelParams::default(), DEFAULT_TOL_KM) {
            Ok(l) => format!("{l:.2} km"),
            Err(Error::NoKey(why)) => why.to_string(),
            Err(e) => return Err(e),
        };
        println!("p = {p:<7} K(15 km) = {:.6}  reach = {reach}", at_15.key_rate);
    }
    Ok(())
}
