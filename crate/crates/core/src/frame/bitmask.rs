/// Packed validity bits, one per row (`true` = present).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bitmask {
    words: Vec<u64>,
    len: usize,
}

impl Bitmask {
    pub fn all_set(len: usize) -> Self {
        let mut words = vec![u64::MAX; len.div_ceil(64)];
        if !len.is_multiple_of(64) {
            if let Some(last) = words.last_mut() {
                *last = (1u64 << (len % 64)) - 1;
            }
        }
        Bitmask { words, len }
    }

    pub fn push(&mut self, bit: bool) {
        if self.len.is_multiple_of(64) {
            self.words.push(0);
        }
        if bit {
            let w = self.len / 64;
            self.words[w] |= 1u64 << (self.len % 64);
        }
        self.len += 1;
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }
}

impl FromIterator<bool> for Bitmask {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut m = Bitmask::default();
        for b in iter {
            m.push(b);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_and_count() {
        let bits: Vec<bool> = (0..130).map(|i| i % 3 != 0).collect();
        let m: Bitmask = bits.iter().copied().collect();
        assert_eq!(m.len(), 130);
        assert_eq!(m.count_ones(), bits.iter().filter(|b| **b).count());
        assert!(m.iter().eq(bits.iter().copied()));
        assert_eq!(Bitmask::all_set(70).count_ones(), 70);
    }
}
