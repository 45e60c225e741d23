//! Key rate of a strongly squeezed TMSV over 15 km of fibre, with every
//! intermediate quantity printed.

use cvkey::resources::r_from_cosh2r;
use cvkey::{secret_key_rate, ChannelParams, MismatchParams, ResourceKind, ResourceSpec};

fn main() -> cvkey::Result<()> {
    let spec = ResourceSpec::new(ResourceKind::Tmsv, r_from_cosh2r(50.0)?, 0.9)?;
    let channel = ChannelParams::new(15.0, 1.0, 0.95)?;
    let b = secret_key_rate(&spec, &MismatchParams::direct(0.01), &channel)?;

    println!("I_AB     = {:.6} bits", b.i_ab);
    println!("chi_BE   = {:.6} bits", b.chi_be);
    println!("lambda   = {:.6}, {:.6}, {:.6}", b.lambda1, b.lambda2, b.lambda3);
    println!("raw rate = {:.6}", b.raw_rate);
    println!("K        = {:.6} bits per pulse", b.key_rate);
    Ok(())
}
