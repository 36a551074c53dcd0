//! Word-level helpers shared by the modular and integer bitsets.

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Mask of the valid bits in the last word of a `bits`-long vector.
#[inline]
pub(crate) fn tail_mask(bits: usize) -> u64 {
    match bits % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

#[inline]
pub(crate) fn get(words: &[u64], i: usize) -> bool {
    words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
}

#[inline]
pub(crate) fn set(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
}

#[inline]
pub(crate) fn clear(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
}

pub(crate) fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// `dst |= src << shift`, dropping everything at or above bit `len`.
pub(crate) fn or_shl(dst: &mut [u64], src: &[u64], shift: usize, len: usize) {
    let word_shift = shift / WORD_BITS;
    let bit_shift = shift % WORD_BITS;
    for (i, &w) in src.iter().enumerate() {
        if w == 0 {
            continue;
        }
        let target = i + word_shift;
        if target >= dst.len() {
            break;
        }
        dst[target] |= w << bit_shift;
        if bit_shift != 0 && target + 1 < dst.len() {
            dst[target + 1] |= w >> (WORD_BITS - bit_shift);
        }
    }
    if let Some(last) = dst.last_mut() {
        *last &= tail_mask(len);
    }
}

/// `dst |= src >> shift`.
pub(crate) fn or_shr(dst: &mut [u64], src: &[u64], shift: usize) {
    let word_shift = shift / WORD_BITS;
    let bit_shift = shift % WORD_BITS;
    for (i, d) in dst.iter_mut().enumerate() {
        let j = i + word_shift;
        if j >= src.len() {
            break;
        }
        let mut v = src[j] >> bit_shift;
        if bit_shift != 0 && j + 1 < src.len() {
            v |= src[j + 1] << (WORD_BITS - bit_shift);
        }
        *d |= v;
    }
}

/// Ascending indices of set bits.
pub(crate) fn ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(wi * WORD_BITS + b)
        })
    })
}
