use std::fmt;
use std::str::FromStr;

use crate::{Result, SboxError};

pub const MIN_DIMENSION: u32 = 2;
pub const MAX_DIMENSION: u32 = 8;

/// Lookup table of a map `F_2^m -> F_2^m`.
///
/// Bijectivity and `f(0) = 0` are not required at construction; the
/// predicates that need them check and reject.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SBox {
    m: u32,
    table: Vec<u8>,
}

impl SBox {
    pub fn new(m: u32, table: Vec<u8>) -> Result<Self> {
        if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&m) {
            return Err(SboxError::UnsupportedDimension(m));
        }
        if table.len() != 1 << m {
            return Err(SboxError::BadLength(table.len()));
        }
        if let Some((position, &value)) = table
            .iter()
            .enumerate()
            .find(|(_, &v)| (v as usize) >= 1 << m)
        {
            return Err(SboxError::ValueOutOfRange {
                position,
                value: value.into(),
                m,
            });
        }
        Ok(SBox { m, table })
    }

    /// Builds an S-box, inferring `m` from the table length.
    pub fn from_table(table: Vec<u8>) -> Result<Self> {
        let m = dimension_for_len(table.len()).ok_or(SboxError::BadLength(table.len()))?;
        SBox::new(m, table)
    }

    pub fn identity(m: u32) -> Result<Self> {
        if !(MIN_DIMENSION..=MAX_DIMENSION).contains(&m) {
            return Err(SboxError::UnsupportedDimension(m));
        }
        Ok(SBox {
            m,
            table: (0..1usize << m).map(|x| x as u8).collect(),
        })
    }

    #[inline]
    pub fn dimension(&self) -> u32 {
        self.m
    }

    /// Number of table entries, `2^m`.
    #[inline]
    pub fn size(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn table(&self) -> &[u8] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> u8 {
        self.table[x]
    }

    pub fn into_table(self) -> Vec<u8> {
        self.table
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = [false; 256];
        self.table
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y as usize], true))
    }

    pub fn is_normalized(&self) -> bool {
        self.table[0] == 0
    }

    /// `x -> f(x) ^ f(0)`. Derivatives, Walsh magnitudes and degrees are unchanged.
    pub fn normalize(&self) -> SBox {
        let c = self.table[0];
        SBox {
            m: self.m,
            table: self.table.iter().map(|&y| y ^ c).collect(),
        }
    }

    pub(crate) fn check_difference(&self, u: usize) -> Result<()> {
        if u == 0 {
            Err(SboxError::ZeroDifference)
        } else if u >= self.size() {
            Err(SboxError::OutOfDomain {
                value: u,
                m: self.m,
            })
        } else {
            Ok(())
        }
    }

    /// Truth table of the derivative `x -> f(x ^ u) ^ f(x)`.
    pub fn derivative(&self, u: usize) -> Result<Vec<u8>> {
        self.check_difference(u)?;
        Ok(self.derivative_unchecked(u))
    }

    pub(crate) fn derivative_unchecked(&self, u: usize) -> Vec<u8> {
        (0..self.size())
            .map(|x| self.table[x ^ u] ^ self.table[x])
            .collect()
    }

    /// Decimal CSV form, the format accepted by [`parse_sbox`] for any `m`.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(self.size() * 3);
        for (i, y) in self.table.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str(&y.to_string());
        }
        out
    }

    /// 16-digit lowercase hex form, only for `m = 4`.
    pub fn to_hex(&self) -> Option<String> {
        (self.m == 4).then(|| {
            self.table
                .iter()
                .map(|&y| char::from_digit(y.into(), 16).unwrap())
                .collect()
        })
    }
}

fn dimension_for_len(len: usize) -> Option<u32> {
    if !len.is_power_of_two() {
        return None;
    }
    let m = len.trailing_zeros();
    (MIN_DIMENSION..=MAX_DIMENSION).contains(&m).then_some(m)
}

impl fmt::Display for SBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

impl FromStr for SBox {
    type Err = SboxError;

    fn from_str(s: &str) -> Result<Self> {
        parse_sbox(s)
    }
}

/// Parses either `2^m` comma-separated decimal values or a string of 16 hex
/// digits (4-bit only). Surrounding parentheses or brackets are ignored.
pub fn parse_sbox(text: &str) -> Result<SBox> {
    let body = text
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .trim();
    if body.is_empty() {
        return Err(SboxError::Empty);
    }
    if body.contains(',') || body.len() <= 3 {
        parse_csv(body)
    } else {
        parse_hex(body)
    }
}

fn parse_csv(body: &str) -> Result<SBox> {
    let values = body
        .split(',')
        .enumerate()
        .map(|(position, token)| {
            let token = token.trim();
            if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(SboxError::MalformedToken {
                    position,
                    token: token.to_owned(),
                });
            }
            // digits only, so the only failure left is overflow
            Ok(token.parse::<u64>().unwrap_or(u64::MAX))
        })
        .collect::<Result<Vec<u64>>>()?;

    let m = dimension_for_len(values.len()).ok_or(SboxError::BadLength(values.len()))?;
    let table = values
        .iter()
        .enumerate()
        .map(|(position, &value)| {
            if value >= 1 << m {
                Err(SboxError::ValueOutOfRange { position, value, m })
            } else {
                Ok(value as u8)
            }
        })
        .collect::<Result<Vec<u8>>>()?;
    SBox::new(m, table)
}

fn parse_hex(body: &str) -> Result<SBox> {
    let digits: Vec<char> = body.chars().collect();
    if let Some((position, c)) = digits
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_ascii_hexdigit())
    {
        return Err(SboxError::MalformedToken {
            position,
            token: c.to_string(),
        });
    }
    if digits.len() != 16 {
        return Err(SboxError::BadHexLength(digits.len()));
    }
    let table = digits
        .iter()
        .map(|c| c.to_digit(16).unwrap() as u8)
        .collect();
    SBox::new(4, table)
}
