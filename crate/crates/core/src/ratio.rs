use core::fmt;

/// Non-negative exact fraction in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(num_rational::Ratio<u64>);

impl Ratio {
    /// Panics if `den` is zero.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        Ratio(num_rational::Ratio::new(num, den))
    }

    pub const ZERO: Ratio = Ratio(num_rational::Ratio::new_raw(0, 1));
    pub const ONE: Ratio = Ratio(num_rational::Ratio::new_raw(1, 1));

    pub fn num(&self) -> u64 {
        *self.0.numer()
    }

    pub fn den(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_one(&self) -> bool {
        self.num() == self.den()
    }

    /// Decimal rendering truncated (not rounded) to `digits` places, so that
    /// 2/3 reads "0.66".
    pub fn to_decimal(&self, digits: u32) -> alloc::string::String {
        use core::fmt::Write;
        let (num, den) = (self.num() as u128, self.den() as u128);
        let mut s = alloc::string::String::new();
        let mut rem = num % den;
        let _ = write!(s, "{}", num / den);
        if digits > 0 {
            s.push('.');
            for _ in 0..digits {
                rem *= 10;
                let _ = write!(s, "{}", rem / den);
                rem %= den;
            }
        }
        s
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num(), self.den())
    }
}
