//! Prints the text export of a schedule.
//!
//! `cargo run -p uqcm --example export_schedule -- [single] [physical]`

use uqcm::gates::JcConvention;
use uqcm::protocol::{build_schedule, Corrections, ProtocolConfig, ProtocolVariant};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let has = |s: &str| args.iter().any(|a| a == s);
    let physical = has("physical");
    let cfg = ProtocolConfig {
        variant: if has("single") {
            ProtocolVariant::SingleCavity
        } else {
            ProtocolVariant::TwoCavity
        },
        convention: if physical {
            JcConvention::Physical
        } else {
            JcConvention::Idealized
        },
        corrections: if physical {
            Corrections::Calibrated
        } else {
            Corrections::Off
        },
        ..ProtocolConfig::default()
    };
    match build_schedule(&cfg) {
        Ok(s) => print!("{}", s.export_text()),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
