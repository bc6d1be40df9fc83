use xdhh_core::domains::personnel::RosterInstance;

use super::FormatError;

pub fn parse_roster(text: &str) -> Result<RosterInstance, FormatError> {
    let inst: RosterInstance = serde_json::from_str(text)?;
    inst.validate()?;
    Ok(inst)
}

pub fn write_roster(inst: &RosterInstance) -> String {
    let mut out = serde_json::to_string_pretty(inst).expect("roster instances always serialize");
    out.push('\n');
    out
}
