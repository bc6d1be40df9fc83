use xdhh_core::domains::flowshop::FlowShopInstance;

use super::{FormatError, Tokens};

/// `n m` followed by `n` rows of `m` processing times.
pub fn parse_flowshop(id: &str, text: &str) -> Result<FlowShopInstance, FormatError> {
    let mut t = Tokens::new(text);
    let n: usize = t.next("job count")?;
    let m: usize = t.next("machine count")?;
    let times = (0..n * m)
        .map(|_| t.next("processing time"))
        .collect::<Result<Vec<u64>, _>>()?;
    t.finish()?;
    Ok(FlowShopInstance::new(id, n, m, times)?)
}

pub fn write_flowshop(inst: &FlowShopInstance) -> String {
    let mut out = format!("{} {}\n", inst.jobs(), inst.machines());
    for j in 0..inst.jobs() as u32 {
        let row: Vec<String> = inst.row(j).iter().map(u64::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Reads every instance of a Taillard benchmark file.
///
/// Each instance has a header line naming its fields, a line
/// `jobs machines seed upper lower`, a `processing times :` line and then
/// `machines` rows of `jobs` times. Instances are numbered `{id}-{k}`
/// from 1 when the file holds more than one.
pub fn parse_taillard(id: &str, text: &str) -> Result<Vec<FlowShopInstance>, FormatError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty()).peekable();
    let mut raw = Vec::new();
    while let Some(line) = lines.next() {
        if !line.to_ascii_lowercase().starts_with("number of jobs") {
            return Err(FormatError::Layout(format!("expected an instance header, found {line:?}")));
        }
        let mut dims = Tokens::new(lines.next().ok_or(FormatError::Truncated("instance dimensions"))?);
        let n: usize = dims.next("job count")?;
        let m: usize = dims.next("machine count")?;
        match lines.next() {
            Some(l) if l.to_ascii_lowercase().starts_with("processing times") => {}
            other => {
                return Err(FormatError::Layout(format!(
                    "expected `processing times`, found {other:?}"
                )))
            }
        }
        let mut machine_major = Vec::with_capacity(n * m);
        while machine_major.len() < n * m {
            let line = lines.next().ok_or(FormatError::Truncated("processing time"))?;
            let mut t = Tokens::new(line);
            while let Ok(p) = t.next::<u64>("processing time") {
                machine_major.push(p);
            }
        }
        if machine_major.len() != n * m {
            return Err(FormatError::Layout("processing time rows do not match the header".into()));
        }
        raw.push((n, m, machine_major));
    }
    let many = raw.len() > 1;
    raw.into_iter()
        .enumerate()
        .map(|(k, (n, m, mm))| {
            let mut times = vec![0; n * m];
            for machine in 0..m {
                for job in 0..n {
                    times[job * m + machine] = mm[machine * n + job];
                }
            }
            let name = if many { format!("{id}-{}", k + 1) } else { id.to_string() };
            Ok(FlowShopInstance::new(name, n, m, times)?)
        })
        .collect()
}

/// Whether `text` looks like a Taillard file rather than the plain layout.
pub(crate) fn is_taillard(text: &str) -> bool {
    text.trim_start().to_ascii_lowercase().starts_with("number of jobs")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAILLARD: &str = "number of jobs, number of machines, initial seed, upper bound and lower bound :
          3           2   873654221          10           9
processing times :
  1  2  3
  4  5  6
number of jobs, number of machines, initial seed, upper bound and lower bound :
          2           1   1          1           1
processing times :
  7 8
";

    #[test]
    fn plain_round_trip() {
        let text = "2 3\n1 2 3\n4 5 6\n";
        let inst = parse_flowshop("f", text).unwrap();
        assert_eq!(inst.p(1, 0), 4);
        assert_eq!(write_flowshop(&inst), text);
    }

    #[test]
    fn taillard_is_transposed() {
        assert!(is_taillard(TAILLARD));
        let all = parse_taillard("ta", TAILLARD).unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].id(), "ta-1");
        assert_eq!((all[0].jobs(), all[0].machines()), (3, 2));
        assert_eq!(all[0].row(0), &[1, 4]);
        assert_eq!(all[0].row(2), &[3, 6]);
        assert_eq!(all[1].row(1), &[8]);
    }

    #[test]
    fn malformed() {
        assert!(parse_flowshop("f", "2 2\n1 2\n3").is_err());
        assert!(parse_taillard("t", "junk").is_err());
        assert!(parse_taillard("t", &TAILLARD[..TAILLARD.len() - 4]).is_err());
    }
}
