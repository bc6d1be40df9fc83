use xdhh_core::domains::binpacking::PackingInstance;

use super::{FormatError, Tokens};

/// `n C` followed by `n` weights.
pub fn parse_packing(id: &str, text: &str) -> Result<PackingInstance, FormatError> {
    let mut t = Tokens::new(text);
    let n: usize = t.next("piece count")?;
    let capacity: u64 = t.next("capacity")?;
    let weights = (0..n).map(|_| t.next("weight")).collect::<Result<Vec<u64>, _>>()?;
    t.finish()?;
    Ok(PackingInstance::new(id, capacity, weights)?)
}

pub fn write_packing(inst: &PackingInstance) -> String {
    let mut out = format!("{} {}\n", inst.num_pieces(), inst.capacity());
    for w in inst.weights() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_write() {
        let inst = parse_packing("a", "3 10\n4\n6\n10\n").unwrap();
        assert_eq!(inst.capacity(), 10);
        assert_eq!(inst.weights(), &[4, 6, 10]);
        assert_eq!(write_packing(&inst), "3 10\n4\n6\n10\n");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(parse_packing("a", "3 10\n4\n6"), Err(FormatError::Truncated(_))));
        assert!(matches!(parse_packing("a", "1 10\n4\n6"), Err(FormatError::Trailing(1))));
        assert!(matches!(parse_packing("a", "1 10\n11"), Err(FormatError::Instance(_))));
        assert!(matches!(parse_packing("a", "1 ten\n1"), Err(FormatError::BadInteger { .. })));
    }
}
