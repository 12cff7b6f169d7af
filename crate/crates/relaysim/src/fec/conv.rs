//! Convolutional mother code: shift-register encoder and trellis tables.

use crate::{Error, Result};

/// Binary convolutional code described by its generator tap masks.
///
/// The mother code of the rate family: constraint length 7 (memory 6) with
/// generators (145, 171, 133) in octal, one output bit per generator per
/// input bit, so the mother rate is 1/3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvCodeSpec {
    constraint_length: usize,
    generators: [u32; 3],
}

impl ConvCodeSpec {
    pub fn new(constraint_length: usize, generators: [u32; 3]) -> Result<Self> {
        if constraint_length < 2 || constraint_length > 16 {
            return Err(Error::InvalidInput(format!(
                "unsupported constraint length {constraint_length}"
            )));
        }
        for &g in &generators {
            if g == 0 || g >> constraint_length != 0 {
                return Err(Error::InvalidInput(format!(
                    "generator {g:o} does not fit in {constraint_length} bits"
                )));
            }
        }
        Ok(Self {
            constraint_length,
            generators,
        })
    }

    /// The memory-6 mother code with generators (145, 171, 133) octal.
    pub fn mother_k7() -> Self {
        Self::new(7, [0o145, 0o171, 0o133]).expect("valid built-in code")
    }

    pub fn constraint_length(&self) -> usize {
        self.constraint_length
    }

    /// Memory M = constraint length - 1; also the number of zero tail bits.
    pub fn memory(&self) -> usize {
        self.constraint_length - 1
    }

    pub fn generators(&self) -> [u32; 3] {
        self.generators
    }

    pub fn num_states(&self) -> usize {
        1 << self.memory()
    }

    /// Output bits for one input bit `u` given the register `state`.
    ///
    /// `state` packs the previous M inputs with the most recent in the top
    /// bit. Returns the 3 output bits packed with generator 0 in bit 0, and
    /// the successor state.
    pub fn step(&self, state: usize, u: u8) -> (usize, u8) {
        let m = self.memory();
        // window = (u_t, u_{t-1}, ..., u_{t-M}) with u_t in the top bit,
        // matching the octal convention where the MSB taps the newest bit.
        let window = ((u as usize) << m) | state;
        let mut out = 0u8;
        for (j, &g) in self.generators.iter().enumerate() {
            out |= (((g as usize & window).count_ones() & 1) as u8) << j;
        }
        let next = (state >> 1) | ((u as usize) << (m - 1));
        (next, out)
    }
}

/// Encode `info_bits` (values 0/1), appending M zero tail bits so the
/// register ends in the zero state. Output length is 3 * (len + M).
pub fn conv_encode(info_bits: &[u8], spec: &ConvCodeSpec) -> Result<Vec<u8>> {
    if info_bits.is_empty() {
        return Err(Error::InvalidInput("empty message".into()));
    }
    let m = spec.memory();
    let mut out = Vec::with_capacity(3 * (info_bits.len() + m));
    let mut state = 0usize;
    for &b in info_bits.iter().chain(std::iter::repeat(&0u8).take(m)) {
        debug_assert!(b <= 1);
        let (next, bits) = spec.step(state, b);
        out.push(bits & 1);
        out.push((bits >> 1) & 1);
        out.push((bits >> 2) & 1);
        state = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_message_encodes_to_zero() {
        let spec = ConvCodeSpec::mother_k7();
        let out = conv_encode(&[0; 16], &spec).unwrap();
        assert_eq!(out.len(), 66);
        assert!(out.iter().all(|&b| b == 0));
    }

    #[test]
    fn empty_message_rejected() {
        let spec = ConvCodeSpec::mother_k7();
        assert!(conv_encode(&[], &spec).is_err());
    }

    #[test]
    fn impulse_response_matches_generators() {
        // A single 1 followed by the 6 tail zeros walks the impulse through
        // the register, so output t carries bit t of each generator:
        //   145 -> 1100101, 171 -> 1111001, 133 -> 1011011
        let spec = ConvCodeSpec::mother_k7();
        let out = conv_encode(&[1], &spec).unwrap();
        let expected = [
            1, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1,
        ];
        assert_eq!(out, expected);
        let g145: Vec<u8> = out.iter().step_by(3).copied().collect();
        let g171: Vec<u8> = out.iter().skip(1).step_by(3).copied().collect();
        let g133: Vec<u8> = out.iter().skip(2).step_by(3).copied().collect();
        assert_eq!(g145, [1, 1, 0, 0, 1, 0, 1]);
        assert_eq!(g171, [1, 1, 1, 1, 0, 0, 1]);
        assert_eq!(g133, [1, 0, 1, 1, 0, 1, 1]);
    }

    #[test]
    fn codeword_weight_at_least_dfree() {
        // By linearity, re-encoding after any bit flip differs from the
        // original codeword in at least d_free positions. The mother code's
        // free distance is 14 (the single-1 impulse achieves it: the three
        // generators carry 4 + 5 + 5 ones). Exhaust all short messages.
        let spec = ConvCodeSpec::mother_k7();
        let mut min_weight = usize::MAX;
        for len in 1..=10usize {
            for val in 1u32..(1 << len) {
                let msg: Vec<u8> = (0..len).map(|i| ((val >> i) & 1) as u8).collect();
                let w = conv_encode(&msg, &spec)
                    .unwrap()
                    .iter()
                    .filter(|&&b| b == 1)
                    .count();
                min_weight = min_weight.min(w);
            }
        }
        assert_eq!(min_weight, 14);
    }

    #[test]
    fn flipping_a_bit_changes_many_output_positions() {
        let spec = ConvCodeSpec::mother_k7();
        let msg = [1, 0, 1, 1, 0, 0, 1, 0];
        let base = conv_encode(&msg, &spec).unwrap();
        for i in 0..msg.len() {
            let mut flipped = msg;
            flipped[i] ^= 1;
            let enc = conv_encode(&flipped, &spec).unwrap();
            let diff = base.iter().zip(&enc).filter(|(a, b)| a != b).count();
            assert!(diff >= 14, "flip at {i} changed only {diff} positions");
        }
    }
}
