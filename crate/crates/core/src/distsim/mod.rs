//! The local-maximum rules executed under their systems readings: a single
//! Broadcast-CONGEST round, a one-pass edge stream, and a preemptive online
//! session. All three agree with [`crate::algorithms::boppana`] on the same
//! ranks.

mod demo;
mod round;
mod stream;

pub use demo::{indistinguishability_demo, IndistReport, InstanceViews};
pub use round::{
    decide, run_round, simulate_one_round, Inbound, KeyEncoding, NodeView, RoundConfig, RoundTrace,
};
pub use stream::{stream_run, stream_run_fallible, Eviction, OnlineSession, StreamState};
