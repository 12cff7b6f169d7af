//! Link-level simulator and analytic toolkit for hybrid-ARQ relay networks
//! with decentralized opportunistic relay selection.
//!
//! The crate is organized around the transmission chain. [`fec`] holds the
//! concatenated code: a rate-1/3 convolutional mother code punctured to the
//! rate family {4/5, 2/3, 4/7, 1/2, 1/3}, a soft-decision Viterbi decoder,
//! and a (255,239) Reed-Solomon outer code. [`channel`] models path loss,
//! Rayleigh block fading and BPSK over AWGN. [`protocol`] runs the HARQ
//! episode state machine with minislot contention and the five relay
//! selection policies. [`analysis`] provides the closed-form BER and
//! throughput machinery, and [`sim`] drives deterministic parallel Monte
//! Carlo experiments. [`cli`] implements the command front end used by the
//! `relaysim` binary.

pub mod analysis;
pub mod channel;
pub mod cli;
pub mod fec;
pub mod protocol;
pub mod sim;
pub mod stats;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's contract.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A bit stream did not line up with the expected framing.
    #[error("framing error: {0}")]
    Framing(String),
    /// A quantity left the domain where the model is defined.
    #[error("model domain error: {0}")]
    ModelDomain(String),
    /// Malformed data table or configuration file.
    #[error("parse error: {0}")]
    Parse(String),
    /// Statistics requested over an empty sample.
    #[error("undefined statistics: {0}")]
    UndefinedStatistics(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
