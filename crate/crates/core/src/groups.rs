//! Assignment of slotted M/F instructions to reconfigurable groups.

use std::fmt;

use crate::error::ValidationError;
use crate::isa::{is_fp_plumbing, Ext, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupId(pub u8);

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}", self.0)
    }
}

/// Disambiguator tag: a group id, or an opcode tag in per-opcode mode.
pub type Tag = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TagMode {
    #[default]
    Group,
    Opcode,
}

/// Kinds that occupy a reconfigurable slot.
pub fn is_slottable(kind: Kind) -> bool {
    match kind.ext() {
        Ext::M => true,
        Ext::F => !is_fp_plumbing(kind),
        _ => false,
    }
}

pub fn slottable_kinds() -> impl Iterator<Item = Kind> {
    Kind::ALL.iter().copied().filter(|&k| is_slottable(k))
}

const DEFAULT_GROUPS: [(&str, &[&str]); 10] = [
    ("mul", &["mul", "mulh", "mulhsu", "mulhu"]),
    ("div", &["div", "divu"]),
    ("rem", &["rem", "remu"]),
    ("fadd", &["fadd.s", "fsub.s"]),
    ("fmul", &["fmul.s"]),
    ("fdiv", &["fdiv.s"]),
    ("fcmp", &["fsgnj.s", "fsgnjn.s", "fsgnjx.s", "fmin.s", "fmax.s", "fle.s", "flt.s", "feq.s"]),
    ("fsqrt", &["fsqrt.s"]),
    ("fcvt", &["fcvt.w.s", "fcvt.wu.s", "fcvt.s.w", "fcvt.s.wu"]),
    ("fma", &["fmadd.s", "fmsub.s", "fnmsub.s", "fnmadd.s"]),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    by_kind: Vec<Option<GroupId>>,
    groups: Vec<(GroupId, String)>,
}

impl Default for GroupTable {
    fn default() -> Self {
        let mut t = GroupTable { by_kind: vec![None; Kind::ALL.len()], groups: Vec::new() };
        for (id, (label, members)) in DEFAULT_GROUPS.iter().enumerate() {
            let g = GroupId(id as u8);
            t.groups.push((g, label.to_string()));
            for m in *members {
                t.by_kind[Kind::from_mnemonic(m).unwrap().index()] = Some(g);
            }
        }
        t
    }
}

impl GroupTable {
    pub fn classify(&self, kind: Kind) -> Option<GroupId> {
        self.by_kind[kind.index()]
    }

    pub fn tag(&self, kind: Kind, mode: TagMode) -> Option<Tag> {
        let g = self.classify(kind)?;
        Some(match mode {
            TagMode::Group => g.0 as Tag,
            TagMode::Opcode => kind.opcode_tag(),
        })
    }

    /// Groups in id order, with their labels.
    pub fn groups(&self) -> &[(GroupId, String)] {
        &self.groups
    }

    pub fn members(&self, g: GroupId) -> Vec<Kind> {
        Kind::ALL.iter().copied().filter(|&k| self.classify(k) == Some(g)).collect()
    }

    pub fn label(&self, g: GroupId) -> Option<&str> {
        self.groups.iter().find(|(id, _)| *id == g).map(|(_, l)| l.as_str())
    }

    /// Parses an override: one `G<id>: mnemonic[,mnemonic...]` line per
    /// group, `#` comments allowed. Empty text yields the default table.
    pub fn parse(text: &str) -> Result<GroupTable, ValidationError> {
        let mut t = GroupTable { by_kind: vec![None; Kind::ALL.len()], groups: Vec::new() };
        for (n, raw) in text.lines().enumerate() {
            let line_no = n + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let syntax = ValidationError::Syntax { line: line_no };
            let (head, list) = line.split_once(':').ok_or(syntax.clone())?;
            let id: u8 = head.trim().strip_prefix('G').and_then(|d| d.parse().ok()).ok_or(syntax.clone())?;
            let g = GroupId(id);
            if t.groups.iter().any(|(x, _)| *x == g) {
                return Err(ValidationError::DuplicateGroup { id: id as u32 });
            }
            let mut label = None;
            for name in list.split(',').map(str::trim) {
                if name.is_empty() {
                    return Err(syntax);
                }
                let kind = Kind::from_mnemonic(name)
                    .ok_or_else(|| ValidationError::UnknownMnemonic { line: line_no, name: name.to_string() })?;
                if !is_slottable(kind) {
                    return Err(ValidationError::NotSlottable { line: line_no, name: name.to_string() });
                }
                let slot = &mut t.by_kind[kind.index()];
                if slot.is_some() {
                    return Err(ValidationError::Duplicate { name: name.to_string() });
                }
                *slot = Some(g);
                label.get_or_insert_with(|| name.trim_end_matches(".s").to_string());
            }
            t.groups.push((g, label.unwrap_or_default()));
        }
        if t.groups.is_empty() {
            return Ok(GroupTable::default());
        }
        if let Some(k) = slottable_kinds().find(|k| t.classify(*k).is_none()) {
            return Err(ValidationError::Unassigned { name: k.mnemonic().to_string() });
        }
        t.groups.sort();
        Ok(t)
    }
}

pub fn load_group_table(text: &str) -> Result<GroupTable, ValidationError> {
    GroupTable::parse(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_listing() {
        let t = GroupTable::default();
        assert_eq!(t.classify(Kind::Mulhsu), Some(GroupId(0)));
        assert_eq!(t.classify(Kind::FeqS), Some(GroupId(6)));
        assert_eq!(t.classify(Kind::Add), None);
        assert_eq!(t.classify(Kind::Flw), None);
        assert_eq!(t.groups().len(), 10);
    }

    #[test]
    fn partition_covers_every_slottable_kind_once() {
        let t = GroupTable::default();
        let total: usize = t.groups().iter().map(|(g, _)| t.members(*g).len()).sum();
        assert_eq!(total, slottable_kinds().count());
        assert_eq!(total, 29);
        assert!(slottable_kinds().all(|k| t.classify(k).is_some()));
        let m = t.groups().iter().filter(|(g, _)| t.members(*g)[0].ext() == Ext::M).count();
        assert_eq!(m, 3);
    }

    fn default_text_with(replace: &[(usize, &str)]) -> String {
        DEFAULT_GROUPS
            .iter()
            .enumerate()
            .filter_map(|(i, (_, members))| {
                let line = replace.iter().find(|(j, _)| *j == i).map(|(_, s)| s.to_string());
                let line = line.unwrap_or_else(|| format!("G{i}: {}", members.join(",")));
                (!line.is_empty()).then_some(line)
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    #[test]
    fn default_text_roundtrips() {
        let t = GroupTable::parse(&default_text_with(&[])).unwrap();
        for k in Kind::ALL {
            assert_eq!(t.classify(*k), GroupTable::default().classify(*k));
        }
    }

    #[test]
    fn merged_div_rem_gives_nine_groups() {
        let text = default_text_with(&[(1, "G1: div,divu,rem,remu"), (2, "")]);
        let t = GroupTable::parse(&text).unwrap();
        assert_eq!(t.groups().len(), 9);
        assert_eq!(t.classify(Kind::Rem), Some(GroupId(1)));
    }

    #[test]
    fn rejects_bad_overrides() {
        let dup = default_text_with(&[(1, "G1: div,divu,mul")]);
        assert_eq!(GroupTable::parse(&dup), Err(ValidationError::Duplicate { name: "mul".into() }));
        let unknown = default_text_with(&[(4, "G4: fmul.d")]);
        assert!(matches!(GroupTable::parse(&unknown), Err(ValidationError::UnknownMnemonic { line: 5, .. })));
        let base = default_text_with(&[(4, "G4: fmul.s,add")]);
        assert!(matches!(GroupTable::parse(&base), Err(ValidationError::NotSlottable { .. })));
        let missing = default_text_with(&[(7, "")]);
        assert_eq!(GroupTable::parse(&missing), Err(ValidationError::Unassigned { name: "fsqrt.s".into() }));
        assert_eq!(GroupTable::parse("G0 mul"), Err(ValidationError::Syntax { line: 1 }));
    }

    #[test]
    fn empty_override_is_default() {
        assert_eq!(GroupTable::parse("# nothing\n\n").unwrap(), GroupTable::default());
    }

    #[test]
    fn opcode_tags_distinguish_members() {
        let t = GroupTable::default();
        assert_eq!(t.tag(Kind::Mul, TagMode::Group), Some(0));
        assert_ne!(t.tag(Kind::Mul, TagMode::Opcode), t.tag(Kind::Mulh, TagMode::Opcode));
        assert_eq!(t.tag(Kind::Add, TagMode::Opcode), None);
    }
}
