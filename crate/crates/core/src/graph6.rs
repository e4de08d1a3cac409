//! graph6 encoding, as produced and consumed by nauty's `geng`/`showg`.
//!
//! Layout: `N(n) R(x)` where `x` lists the upper triangle column by column
//! (`(0,1) (0,2) (1,2) (0,3) ...`), padded with zeros to a multiple of six
//! bits, and every 6-bit group is offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

fn sextet(b: u8) -> Result<u64> {
    if (63..=126).contains(&b) {
        Ok((b - 63) as u64)
    } else {
        Err(Error::Graph6(format!("byte {b} outside 63..=126")))
    }
}

pub fn decode(text: &str) -> Result<Graph> {
    let text = text.trim();
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    let (n, body) = if bytes[0] != 126 {
        (sextet(bytes[0])? as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::Graph6("truncated size field".into()));
        }
        let mut n = 0u64;
        for &b in &bytes[1..4] {
            n = (n << 6) | sextet(b)?;
        }
        (n as usize, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Error::Graph6("truncated size field".into()));
        }
        let mut n = 0u64;
        for &b in &bytes[2..8] {
            n = (n << 6) | sextet(b)?;
        }
        (n as usize, &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Error::Graph6(format!(
            "expected {expected} data bytes for n={n}, found {}",
            body.len()
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = sextet(body[k / 6])?;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.set(i, j);
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let last = sextet(body[expected - 1])?;
        if last & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(Error::Graph6("non-zero padding bits".into()));
        }
    }
    Ok(g)
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&encode(self))
    }
}

impl<'de> serde::Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        decode(&text).map_err(serde::de::Error::custom)
    }
}
