//! eBCH construction, BPSK/AWGN channel, ordered-statistics decoding and
//! Monte Carlo BLER estimation.

pub mod bch;
pub mod bler;
pub mod channel;
pub mod code;
pub mod gf2;
pub mod osd;

pub use bch::build_ebch;
pub use bler::{
    estimate_bler, required_snr_sim, BlerConfig, BlerEstimate, RequiredSnrReport, SweepConfig,
    SweepPoint,
};
pub use channel::{transmit, ReceivedWord};
pub use code::{CodeSpec, Construction};
pub use osd::{osd_decode, OsdDecoder, OsdOutput};
