//! graph6 encoding, short form only (orders 0..=62).
//!
//! Bits of the upper triangle are taken column by column:
//! `x(0,1) x(0,2) x(1,2) x(0,3) ...`, packed six to a byte and offset by 63.

use std::io::{BufRead, Write};

use super::{Graph, MAX_ORDER};
use crate::error::{Error, Result};

pub(super) fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

pub(super) fn decode(s: &str) -> Result<Graph> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    let (&first, data) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty string".into()))?;
    if first == b'~' {
        return Err(Error::Capacity(format!(
            "long-form graph6 (order > {MAX_ORDER}) is not supported"
        )));
    }
    if !(63..=126).contains(&first) {
        return Err(Error::Graph6(format!("invalid order byte {first:#x}")));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if data.len() != expected {
        return Err(Error::Graph6(format!(
            "order {n} needs {expected} data bytes, found {}",
            data.len()
        )));
    }
    let mut rows = vec![0u64; n];
    let mut k = 0usize;
    for (idx, &b) in data.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("invalid data byte {b:#x} at {}", idx + 1)));
        }
        let chunk = b - 63;
        for shift in (0..6).rev() {
            let bit = chunk >> shift & 1;
            if k >= nbits {
                if bit != 0 {
                    return Err(Error::Graph6("nonzero padding bits".into()));
                }
            } else if bit == 1 {
                let (i, j) = pair_of(k);
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_rows_unchecked(rows))
}

/// Inverse of the column-major upper-triangle index.
fn pair_of(k: usize) -> (usize, usize) {
    let mut j = 1;
    while j * (j + 1) / 2 <= k {
        j += 1;
    }
    (k - j * (j - 1) / 2, j)
}

/// Reads one graph per non-empty line. A `>>graph6<<` header is tolerated.
pub fn read_graph6_stream<R: BufRead>(reader: R) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let mut line = line.trim();
        if let Some(rest) = line.strip_prefix(">>graph6<<") {
            line = rest;
        }
        if line.is_empty() {
            continue;
        }
        out.push(decode(line)?);
    }
    Ok(out)
}

/// Writes one graph6 line per graph, no header.
pub fn write_graph6_stream<W: Write>(mut writer: W, graphs: &[Graph]) -> Result<()> {
    for g in graphs {
        writeln!(writer, "{}", encode(g))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_strings() {
        // Reference strings from the graph6 format description and nauty.
        assert_eq!(encode(&Graph::empty(0).unwrap()), "?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(encode(&k3), "Bw");
        let ex = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&ex), "DQc");
        let petersen = "IheA@GUAo";
        let g = decode(petersen).unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(g.size(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(encode(&g), petersen);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(decode(""), Err(Error::Graph6(_))));
        assert!(matches!(decode("Bww"), Err(Error::Graph6(_))));
        assert!(matches!(decode("B0"), Err(Error::Graph6(_))));
        // K2 is "A_"; "A`" sets a padding bit.
        assert!(decode("A_").is_ok());
        assert!(matches!(decode("A`"), Err(Error::Graph6(_))));
        assert!(matches!(decode("~?@?"), Err(Error::Capacity(_))));
    }

    #[test]
    fn stream_round_trip() {
        let text = ">>graph6<<Bw\n\nA_\n@\n";
        let gs = read_graph6_stream(text.as_bytes()).unwrap();
        assert_eq!(gs.len(), 3);
        let mut buf = Vec::new();
        write_graph6_stream(&mut buf, &gs).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "Bw\nA_\n@\n");
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(n in 0usize..=20, seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                    if state & 1 == 1 { g.add_edge(u, v); }
                }
            }
            let s = encode(&g);
            prop_assert_eq!(decode(&s).unwrap(), g);
        }
    }
}
