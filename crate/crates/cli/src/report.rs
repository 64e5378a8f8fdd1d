use std::fmt::Write as _;

use serde_json::{Map, Value};
use walker::expr::{Expr, Style};

/// Report payload. Expressions are kept symbolic so that JSON and text can
/// render them in their own notation.
#[derive(Clone, Debug)]
pub enum Node {
    Expr(Expr),
    Text(String),
    Bool(bool),
    Int(i64),
    Float(f64),
    Null,
    List(Vec<Node>),
    Map(Vec<(String, Node)>),
}

impl Node {
    pub fn map() -> Node {
        Node::Map(Vec::new())
    }

    /// Appends to a map node; panics on other variants.
    pub fn with(mut self, key: &str, value: impl Into<Node>) -> Node {
        match &mut self {
            Node::Map(entries) => entries.push((key.to_string(), value.into())),
            _ => panic!("with() on a non-map node"),
        }
        self
    }

    pub fn exprs<'a>(entries: impl IntoIterator<Item = (String, &'a Expr)>) -> Node {
        Node::Map(entries.into_iter().map(|(k, e)| (k, Node::Expr(e.clone()))).collect())
    }

    pub fn to_json(&self) -> Value {
        match self {
            Node::Expr(e) => Value::String(e.render(Style::Bracket)),
            Node::Text(s) => Value::String(s.clone()),
            Node::Bool(b) => Value::Bool(*b),
            Node::Int(n) => Value::from(*n),
            Node::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Node::Null => Value::Null,
            Node::List(items) => Value::Array(items.iter().map(Node::to_json).collect()),
            Node::Map(entries) => {
                let mut m = Map::new();
                for (k, v) in entries {
                    m.insert(k.clone(), v.to_json());
                }
                Value::Object(m)
            }
        }
    }

    fn scalar_text(&self) -> Option<String> {
        Some(match self {
            Node::Expr(e) => e.render(Style::Subscript),
            Node::Text(s) => s.clone(),
            Node::Bool(b) => b.to_string(),
            Node::Int(n) => n.to_string(),
            Node::Float(x) => format!("{x:e}"),
            Node::Null => "none".into(),
            Node::List(items) if items.iter().all(|i| matches!(i, Node::Float(_) | Node::Int(_))) => {
                let parts: Vec<String> = items.iter().filter_map(Node::scalar_text).collect();
                format!("({})", parts.join(", "))
            }
            _ => return None,
        })
    }

    fn write_text(&self, out: &mut String, indent: usize) {
        let pad = "  ".repeat(indent);
        match self {
            Node::Map(entries) => {
                for (k, v) in entries {
                    match v.scalar_text() {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}{k}: {s}");
                        }
                        None if v.is_empty() => {
                            let _ = writeln!(out, "{pad}{k}: (none)");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}{k}:");
                            v.write_text(out, indent + 1);
                        }
                    }
                }
            }
            Node::List(items) => {
                for item in items {
                    match item.scalar_text() {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}- {s}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}-");
                            item.write_text(out, indent + 1);
                        }
                    }
                }
            }
            other => {
                let _ = writeln!(out, "{pad}{}", other.scalar_text().unwrap_or_default());
            }
        }
    }

    fn is_empty(&self) -> bool {
        matches!(self, Node::Map(v) if v.is_empty()) || matches!(self, Node::List(v) if v.is_empty())
    }
}

impl From<Expr> for Node {
    fn from(e: Expr) -> Node {
        Node::Expr(e)
    }
}

impl From<&Expr> for Node {
    fn from(e: &Expr) -> Node {
        Node::Expr(e.clone())
    }
}

impl From<String> for Node {
    fn from(s: String) -> Node {
        Node::Text(s)
    }
}

impl From<&str> for Node {
    fn from(s: &str) -> Node {
        Node::Text(s.to_string())
    }
}

impl From<bool> for Node {
    fn from(b: bool) -> Node {
        Node::Bool(b)
    }
}

impl From<usize> for Node {
    fn from(n: usize) -> Node {
        Node::Int(n as i64)
    }
}

impl From<u64> for Node {
    fn from(n: u64) -> Node {
        Node::Int(n as i64)
    }
}

impl From<f64> for Node {
    fn from(x: f64) -> Node {
        Node::Float(x)
    }
}

impl<T: Into<Node>> From<Option<T>> for Node {
    fn from(v: Option<T>) -> Node {
        v.map_or(Node::Null, Into::into)
    }
}

impl<T: Into<Node>> From<Vec<T>> for Node {
    fn from(v: Vec<T>) -> Node {
        Node::List(v.into_iter().map(Into::into).collect())
    }
}

impl From<[f64; 3]> for Node {
    fn from(p: [f64; 3]) -> Node {
        Node::List(p.into_iter().map(Node::Float).collect())
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub argv: Vec<String>,
    pub context: Vec<String>,
    pub result: Node,
    pub discrepancy_notes: Vec<String>,
    pub exit: i32,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        let mut command = Map::new();
        command.insert("name".into(), Value::String(self.command.clone()));
        command.insert("argv".into(), Value::from(self.argv.clone()));
        root.insert("command".into(), Value::Object(command));
        root.insert("context".into(), Value::from(self.context.clone()));
        root.insert("result".into(), self.result.to_json());
        root.insert("discrepancy_notes".into(), Value::from(self.discrepancy_notes.clone()));
        root.insert("exit".into(), Value::from(self.exit));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.argv.join(" "));
        if self.context.is_empty() {
            let _ = writeln!(out, "context: (none)");
        } else {
            let _ = writeln!(out, "context: {}", self.context.join(" "));
        }
        self.result.write_text(&mut out, 0);
        if self.discrepancy_notes.is_empty() {
            let _ = writeln!(out, "discrepancy notes: (none)");
        } else {
            let _ = writeln!(out, "discrepancy notes:");
            for n in &self.discrepancy_notes {
                let _ = writeln!(out, "  - {n}");
            }
        }
        let _ = writeln!(out, "exit: {}", self.exit);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_insertion_order() {
        let n = Node::map().with("z", 1usize).with("a", Expr::t().pow(2));
        assert_eq!(serde_json::to_string(&n.to_json()).unwrap(), r#"{"z":1,"a":"t^2"}"#);
    }

    #[test]
    fn text_uses_subscripts() {
        let mut ctx = walker::expr::Context::new();
        ctx.declare("f:(t,x)").unwrap();
        let e = ctx.parse("f_tx").unwrap();
        let mut out = String::new();
        Node::map().with("e", e).with("empty", Node::map()).write_text(&mut out, 0);
        assert_eq!(out, "e: f_tx\nempty: (none)\n");
    }
}
