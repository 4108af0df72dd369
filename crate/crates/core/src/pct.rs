//! RFC 3986 percent-encoding over the unreserved set — the single escaping
//! rule used wherever a value is embedded in a query string or a
//! line-oriented frame. Note this is not form encoding: `+` means a literal
//! plus sign.

use crate::fault::Fault;

fn is_unreserved(b: u8) -> bool {
    b.is_ascii_alphanumeric() || matches!(b, b'-' | b'.' | b'_' | b'~')
}

pub fn encode(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for b in s.bytes() {
        if is_unreserved(b) {
            out.push(b as char);
        } else {
            out.push('%');
            out.push(char::from_digit((b >> 4) as u32, 16).unwrap().to_ascii_uppercase());
            out.push(char::from_digit((b & 0xf) as u32, 16).unwrap().to_ascii_uppercase());
        }
    }
    out
}

pub fn decode(s: &str) -> Result<String, Fault> {
    let bytes = s.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'%' {
            let hi = bytes.get(i + 1).and_then(|b| (*b as char).to_digit(16));
            let lo = bytes.get(i + 2).and_then(|b| (*b as char).to_digit(16));
            match (hi, lo) {
                (Some(hi), Some(lo)) => {
                    out.push(((hi << 4) | lo) as u8);
                    i += 3;
                }
                _ => return Err(Fault::bad_params("invalid percent-encoding")),
            }
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    String::from_utf8(out).map_err(|_| Fault::bad_params("percent-encoded text is not valid UTF-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unreserved_passes_through() {
        assert_eq!(encode("Abc-12.3_~"), "Abc-12.3_~");
    }

    #[test]
    fn reserved_and_spaces_are_escaped() {
        assert_eq!(encode("a b&c=d"), "a%20b%26c%3Dd");
        assert_eq!(decode("a%20b%26c%3Dd").unwrap(), "a b&c=d");
    }

    #[test]
    fn utf8_round_trips_bytewise() {
        let s = "señal λ\n";
        assert_eq!(decode(&encode(s)).unwrap(), s);
    }

    #[test]
    fn plus_is_literal() {
        assert_eq!(decode("a+b").unwrap(), "a+b");
        assert_eq!(encode("a+b"), "a%2Bb");
    }

    #[test]
    fn truncated_or_bad_escapes_fail() {
        assert!(decode("%").is_err());
        assert!(decode("%2").is_err());
        assert!(decode("%zz").is_err());
        assert!(decode("%ff").is_err()); // lone 0xff is not UTF-8
    }
}
