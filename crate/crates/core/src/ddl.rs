//! SQL-style DDL projection of a relational schema.
//!
//! Underlined attributes form the primary key; suffixed FKs and the leading
//! key of subtype, multi-valued attribute and weak entity relations become
//! foreign-key constraints. Suffix variables have no SQL counterpart and are
//! kept as comments. Columns are typed `TEXT`.

use std::collections::HashMap;

use crate::model::{Identifier, RdsAttribute, RelationalSchema};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ddl {
    pub text: String,
    /// FKs whose referenced PK is not the PK of any regular entity relation.
    pub unresolved: Vec<String>,
}

fn column(a: &RdsAttribute) -> String {
    match &a.prefix {
        Some(p) => format!("{p}_{}", a.name),
        None => a.name.to_string(),
    }
}

pub fn emit_ddl(s: &RelationalSchema) -> Ddl {
    let mut pk_owner: HashMap<&Identifier, &Identifier> = HashMap::new();
    for r in &s.relations {
        if let Some(first) = r.attributes.first() {
            if first.underlined && first.name.matches_prefix_of(&r.name) {
                pk_owner.entry(&first.name).or_insert(&r.name);
            }
        }
    }

    let mut tables = Vec::new();
    let mut unresolved = Vec::new();
    for r in &s.relations {
        let mut items: Vec<(String, Option<String>)> = Vec::new();
        for a in &r.attributes {
            let null = if a.underlined { " NOT NULL" } else { "" };
            items.push((format!("{} TEXT{null}", column(a)), None));
        }
        let pk: Vec<String> = r
            .attributes
            .iter()
            .filter(|a| a.underlined)
            .map(column)
            .collect();
        if !pk.is_empty() {
            items.push((format!("PRIMARY KEY ({})", pk.join(", ")), None));
        }
        if let Some(first) = r.attributes.first() {
            match pk_owner.get(&first.name) {
                Some(owner) if first.underlined && *owner != &r.name => items.push((
                    format!(
                        "FOREIGN KEY ({}) REFERENCES {owner} ({})",
                        column(first),
                        first.name
                    ),
                    None,
                )),
                _ => {}
            }
        }
        let mut comments = Vec::new();
        for a in r.attributes.iter().filter(|a| a.is_fk()) {
            let suffix = a.suffix.as_ref().expect("fk has a suffix");
            match pk_owner.get(&a.name) {
                Some(target) => items.push((
                    format!(
                        "FOREIGN KEY ({}) REFERENCES {target} ({})",
                        column(a),
                        a.name
                    ),
                    Some(suffix.to_string()),
                )),
                None => {
                    unresolved.push(format!("{}.{}", r.name, a.qualified_name()));
                    comments.push(format!(
                        "    -- unresolved foreign key {} {suffix}: no relation has primary key {}",
                        column(a),
                        a.name
                    ));
                }
            }
        }
        let mut table = format!("CREATE TABLE {} (\n", r.name);
        let last = items.len().saturating_sub(1);
        for (i, (item, comment)) in items.iter().enumerate() {
            table.push_str("    ");
            table.push_str(item);
            if i != last {
                table.push(',');
            }
            if let Some(c) = comment {
                table.push_str(" -- ");
                table.push_str(c);
            }
            table.push('\n');
        }
        for c in comments {
            table.push_str(&c);
            table.push('\n');
        }
        table.push_str(");\n");
        tables.push(table);
    }
    Ddl {
        text: tables.join("\n"),
        unresolved,
    }
}
