//! Concatenated coding chain: RCPC inner code and Reed-Solomon outer code.
//!
//! The inner code is a rate-1/3 convolutional mother code punctured to the
//! ordered rate family {4/5, 2/3, 4/7, 1/2, 1/3}. Puncturing masks are
//! rate-compatible (every lower rate keeps a superset of the bits of every
//! higher rate), so a retransmission only ever adds mother-code positions.
//! Masks ship as a plain-text data table so they can be swapped without
//! touching code; [`RcpcFamily::standard`] loads the embedded copy.

mod conv;
mod gf256;
mod rs;
mod viterbi;

pub use conv::{conv_encode, ConvCodeSpec};
pub use rs::{rs_decode, rs_encode, symbols_from_bits, symbols_to_bits, RsCodeSpec};
pub use viterbi::{viterbi_decode, viterbi_decode_with, Trellis};

use crate::{Error, Result};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

/// A code rate as a reduced fraction, e.g. 4/5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeRate {
    num: u32,
    den: u32,
}

impl CodeRate {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 || num > den {
            return Err(Error::InvalidInput(format!("bad code rate {num}/{den}")));
        }
        let g = gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(&self) -> u32 {
        self.num
    }

    pub fn denominator(&self) -> u32 {
        self.den
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for CodeRate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for CodeRate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("rate `{s}` is not of the form a/b")))?;
        let num = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rate numerator `{n}`")))?;
        let den = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rate denominator `{d}`")))?;
        CodeRate::new(num, den)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Keep mask over one puncturing period: 3 rows (one per generator) by P
/// columns (one per input bit), true = transmit this mother-code bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturingPattern {
    period: usize,
    keep: [Vec<bool>; 3],
}

impl PuncturingPattern {
    pub fn new(period: usize, keep: [Vec<bool>; 3]) -> Result<Self> {
        if period == 0 || keep.iter().any(|row| row.len() != period) {
            return Err(Error::InvalidInput(
                "puncturing rows must all have length P".into(),
            ));
        }
        Ok(Self { period, keep })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Number of mother-code bits kept per period (k_c).
    pub fn kept_per_period(&self) -> usize {
        self.keep
            .iter()
            .map(|row| row.iter().filter(|&&k| k).count())
            .sum()
    }

    /// Keep flag for mother position (column `col`, generator `row`).
    pub fn keeps(&self, row: usize, col: usize) -> bool {
        self.keep[row][col % self.period]
    }

    /// True if this pattern keeps every position the other keeps.
    pub fn is_superset_of(&self, other: &PuncturingPattern) -> bool {
        self.period == other.period
            && self
                .keep
                .iter()
                .zip(&other.keep)
                .all(|(a, b)| a.iter().zip(b).all(|(&x, &y)| x || !y))
    }

    /// Pattern keeping exactly the positions in `self` but not in `other`.
    pub fn difference(&self, other: &PuncturingPattern) -> PuncturingPattern {
        let keep = [0, 1, 2].map(|r| {
            (0..self.period)
                .map(|c| self.keep[r][c] && !other.keep[r][c])
                .collect()
        });
        PuncturingPattern {
            period: self.period,
            keep,
        }
    }
}

/// The ordered rate family sharing one mother code.
///
/// Rates are strictly decreasing; construction checks rate compatibility and
/// that each mask's kept-bit count matches its nominal rate P / k_c.
#[derive(Debug, Clone)]
pub struct RcpcFamily {
    spec: ConvCodeSpec,
    rates: Vec<(CodeRate, PuncturingPattern)>,
}

impl RcpcFamily {
    pub fn new(spec: ConvCodeSpec, rates: Vec<(CodeRate, PuncturingPattern)>) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::InvalidInput("empty rate family".into()));
        }
        let period = rates[0].1.period();
        for (rate, pat) in &rates {
            if pat.period() != period {
                return Err(Error::InvalidInput("mixed puncturing periods".into()));
            }
            let kc = pat.kept_per_period();
            let nominal = CodeRate::new(period as u32, kc as u32)?;
            if nominal != *rate {
                return Err(Error::InvalidInput(format!(
                    "mask for rate {rate} keeps {kc} bits per period (implies {nominal})"
                )));
            }
        }
        for pair in rates.windows(2) {
            let (ra, pa) = &pair[0];
            let (rb, pb) = &pair[1];
            if ra.as_f64() <= rb.as_f64() {
                return Err(Error::InvalidInput(format!(
                    "rates not strictly decreasing: {ra} then {rb}"
                )));
            }
            if !pb.is_superset_of(pa) {
                return Err(Error::InvalidInput(format!(
                    "rate {rb} mask does not contain rate {ra} mask"
                )));
            }
        }
        Ok(Self { spec, rates })
    }

    /// Parse the plain-text mask table: one line per rate, `rate` followed by
    /// the 3xP keep mask row-major.
    pub fn from_table_str(spec: ConvCodeSpec, table: &str) -> Result<Self> {
        let mut rates = Vec::new();
        for (lineno, line) in table.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let rate: CodeRate = fields
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: missing rate", lineno + 1)))?
                .parse()?;
            let bits: Vec<bool> = fields
                .map(|f| match f {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    other => Err(Error::Parse(format!(
                        "line {}: mask entry `{other}` is not 0/1",
                        lineno + 1
                    ))),
                })
                .collect::<Result<_>>()?;
            if bits.len() % 3 != 0 || bits.is_empty() {
                return Err(Error::Parse(format!(
                    "line {}: expected 3xP mask entries, got {}",
                    lineno + 1,
                    bits.len()
                )));
            }
            let p = bits.len() / 3;
            let keep = [
                bits[..p].to_vec(),
                bits[p..2 * p].to_vec(),
                bits[2 * p..].to_vec(),
            ];
            rates.push((rate, PuncturingPattern::new(p, keep)?));
        }
        Self::new(spec, rates)
    }

    pub fn from_table_file(spec: ConvCodeSpec, path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_table_str(spec, &text)
    }

    /// The built-in memory-6, period-8 family on generators (145, 171, 133).
    pub fn standard() -> &'static RcpcFamily {
        static FAMILY: OnceLock<RcpcFamily> = OnceLock::new();
        FAMILY.get_or_init(|| {
            RcpcFamily::from_table_str(
                ConvCodeSpec::mother_k7(),
                include_str!("../../data/puncture_m6_p8.txt"),
            )
            .expect("embedded puncture table is valid")
        })
    }

    pub fn spec(&self) -> &ConvCodeSpec {
        &self.spec
    }

    pub fn period(&self) -> usize {
        self.rates[0].1.period()
    }

    /// Rates in transmission order, highest first.
    pub fn rates(&self) -> impl Iterator<Item = CodeRate> + '_ {
        self.rates.iter().map(|(r, _)| *r)
    }

    pub fn num_rates(&self) -> usize {
        self.rates.len()
    }

    pub fn pattern(&self, rate: CodeRate) -> Result<&PuncturingPattern> {
        self.rates
            .iter()
            .find(|(r, _)| *r == rate)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::InvalidInput(format!("rate {rate} not in family")))
    }

    pub fn rate_at(&self, index: usize) -> CodeRate {
        self.rates[index].0
    }

    /// Pattern holding the positions `to_rate` keeps but `from_rate` does not.
    pub fn increment_pattern(
        &self,
        from_rate: CodeRate,
        to_rate: CodeRate,
    ) -> Result<PuncturingPattern> {
        let from_idx = self.index_of(from_rate)?;
        let to_idx = self.index_of(to_rate)?;
        if to_idx < from_idx {
            return Err(Error::InvalidInput(format!(
                "cannot step up from rate {from_rate} to {to_rate}"
            )));
        }
        Ok(self.rates[to_idx].1.difference(&self.rates[from_idx].1))
    }

    fn index_of(&self, rate: CodeRate) -> Result<usize> {
        self.rates
            .iter()
            .position(|(r, _)| *r == rate)
            .ok_or_else(|| Error::InvalidInput(format!("rate {rate} not in family")))
    }
}

/// Soft codeword: one log-likelihood-ratio metric per mother-code position,
/// positive favoring bit 0. Never-transmitted (punctured) positions carry the
/// neutral metric 0 and contribute nothing to path metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct SoftWord {
    pub llrs: Vec<f64>,
}

impl SoftWord {
    pub fn neutral(len: usize) -> Self {
        Self {
            llrs: vec![0.0; len],
        }
    }

    /// Ideal noiseless soft values for hard bits: +1 for 0, -1 for 1.
    pub fn from_hard_bits(bits: &[u8]) -> Self {
        Self {
            llrs: bits.iter().map(|&b| 1.0 - 2.0 * b as f64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.llrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.llrs.is_empty()
    }
}

/// Keep the masked subset of a mother codeword.
///
/// `mother_bits` must cover whole puncturing periods (a multiple of 3P).
pub fn puncture(mother_bits: &[u8], pattern: &PuncturingPattern) -> Result<Vec<u8>> {
    let p = pattern.period();
    if mother_bits.len() % (3 * p) != 0 {
        return Err(Error::Framing(format!(
            "mother length {} is not a multiple of 3P = {}",
            mother_bits.len(),
            3 * p
        )));
    }
    let mut out = Vec::with_capacity(mother_bits.len() / (3 * p) * pattern.kept_per_period());
    for (pos, &bit) in mother_bits.iter().enumerate() {
        // mother stream interleaves the 3 generator outputs per input bit
        let col = pos / 3;
        let row = pos % 3;
        if pattern.keeps(row, col) {
            out.push(bit);
        }
    }
    Ok(out)
}

/// The extra bits a retransmission at `to_rate` adds on top of `from_rate`.
///
/// Equal rates yield an empty sequence. Concatenating the rate-`from` subset
/// with this output covers exactly the rate-`to` kept set.
pub fn incremental_bits(
    mother_bits: &[u8],
    from_rate: CodeRate,
    to_rate: CodeRate,
    family: &RcpcFamily,
) -> Result<Vec<u8>> {
    if from_rate == to_rate {
        return Ok(Vec::new());
    }
    let diff = family.increment_pattern(from_rate, to_rate)?;
    puncture(mother_bits, &diff)
}

/// Place received soft metrics back onto the full mother-length lattice.
///
/// `received` holds one metric per kept position of `pattern`, in stream
/// order. Positions the pattern punctures stay neutral. When `accumulated`
/// is given, the placed metrics are summed onto it (code combining) and the
/// lengths must agree.
pub fn depuncture(
    received: &SoftWord,
    pattern: &PuncturingPattern,
    accumulated: Option<&SoftWord>,
) -> Result<SoftWord> {
    let kc = pattern.kept_per_period();
    if kc == 0 {
        return Err(Error::Framing("pattern keeps no positions".into()));
    }
    if received.len() % kc != 0 {
        return Err(Error::Framing(format!(
            "received length {} is not a multiple of the {kc} kept bits per period",
            received.len()
        )));
    }
    let periods = received.len() / kc;
    let mother_len = periods * 3 * pattern.period();
    let mut out = match accumulated {
        Some(acc) => {
            if acc.len() != mother_len {
                return Err(Error::Framing(format!(
                    "accumulated length {} does not match mother length {mother_len}",
                    acc.len()
                )));
            }
            acc.clone()
        }
        None => SoftWord::neutral(mother_len),
    };
    add_received(&mut out, received, pattern)?;
    Ok(out)
}

/// In-place variant of [`depuncture`]: sum `received` onto `accumulated`.
pub fn add_received(
    accumulated: &mut SoftWord,
    received: &SoftWord,
    pattern: &PuncturingPattern,
) -> Result<()> {
    let mut it = received.llrs.iter();
    for pos in 0..accumulated.len() {
        let (col, row) = (pos / 3, pos % 3);
        if pattern.keeps(row, col) {
            let &llr = it
                .next()
                .ok_or_else(|| Error::Framing("received word shorter than kept set".into()))?;
            accumulated.llrs[pos] += llr;
        }
    }
    if it.next().is_some() {
        return Err(Error::Framing("received word longer than kept set".into()));
    }
    Ok(())
}

/// Mother codeword length for a message of `info_bits` bits (tail included).
pub fn mother_len(info_bits: usize, spec: &ConvCodeSpec) -> usize {
    3 * (info_bits + spec.memory())
}
