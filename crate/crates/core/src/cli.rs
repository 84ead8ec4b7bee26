//! The sample file format.
//!
//! One record per line: `+ string` for a positive, `- string` for a
//! negative. Blank lines and lines starting with `#` are skipped. An
//! optional `@alphabet SYMBOLS` directive fixes the alphabet; without it
//! the alphabet is inferred from the sample strings.

use crate::error::{Error, Result};
use crate::strings::Alphabet;
use crate::synthesis::Sample;

pub fn parse_sample(text: &str) -> Result<Sample> {
    let mut alphabet: Option<Alphabet> = None;
    let mut positives: Vec<String> = Vec::new();
    let mut negatives: Vec<String> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("@alphabet") {
            if alphabet.is_some() {
                return Err(Error::Parse {
                    line,
                    message: "duplicate @alphabet directive".into(),
                });
            }
            let symbols = rest.trim();
            if symbols.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: "@alphabet needs at least one symbol".into(),
                });
            }
            alphabet = Some(Alphabet::new(symbols.chars()).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?);
            continue;
        }
        let (sign, rest) = match trimmed.split_at(1) {
            ("+", rest) => (true, rest),
            ("-", rest) => (false, rest),
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected '+', '-', '@alphabet', or '#', got {trimmed:?}"),
                })
            }
        };
        let string = rest.trim();
        if string.is_empty() {
            return Err(Error::Parse {
                line,
                message: "classified string must be nonempty".into(),
            });
        }
        let bucket = if sign { &mut positives } else { &mut negatives };
        bucket.push(string.to_string());
        // conflicts are caught here so the report carries the line number
        let other = if sign { &negatives } else { &positives };
        if other.iter().any(|s| s == string) {
            return Err(Error::Parse {
                line,
                message: format!("{string:?} is classified both positive and negative"),
            });
        }
    }
    Sample::new(&positives, &negatives, alphabet)
}
