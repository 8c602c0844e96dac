use serde::Serialize;
use serde_json::Value;

use crate::config::Format;

/// Result class of a command, mapped onto the exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Inconclusive,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 2,
        }
    }

    /// The worse of the two.
    pub fn and(self, other: Outcome) -> Outcome {
        self.max(other)
    }
}

pub trait Report: Serialize {
    const COMMAND: &'static str;
    fn outcome(&self) -> Outcome;
    /// One line for people reading the text format.
    fn headline(&self) -> String;
}

#[derive(Serialize)]
struct Envelope<'a, R> {
    command: &'static str,
    outcome: Outcome,
    headline: String,
    report: &'a R,
}

pub fn render<R: Report>(r: &R, format: Format) -> String {
    let env = Envelope {
        command: R::COMMAND,
        outcome: r.outcome(),
        headline: r.headline(),
        report: r,
    };
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = format!("{}\noutcome: {}\n", env.headline, outcome_word(env.outcome));
            let v = serde_json::to_value(r).expect("reports serialize");
            if let Value::Object(map) = v {
                for (k, v) in &map {
                    write_value(&mut out, 0, k, v);
                }
            }
            out
        }
    }
}

fn outcome_word(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Inconclusive => "inconclusive",
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn write_value(out: &mut String, indent: usize, key: &str, v: &Value) {
    let pad = " ".repeat(indent);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    match v {
        Value::Array(items) if items.is_empty() => out.push_str(&format!("{pad}{key}: []\n")),
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            let inline = parts.join(", ");
            if inline.len() <= 60 {
                out.push_str(&format!("{pad}{key}: [{inline}]\n"));
            } else {
                out.push_str(&format!("{pad}{key}:\n"));
                for p in parts {
                    out.push_str(&format!("{pad}  - {p}\n"));
                }
            }
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, x) in items.iter().enumerate() {
                write_value(out, indent + 2, &format!("[{i}]"), x);
            }
        }
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in map {
                write_value(out, indent + 2, k, x);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Demo {
        name: &'static str,
        steps: Vec<&'static str>,
        nested: Vec<(u32, bool)>,
    }

    impl Report for Demo {
        const COMMAND: &'static str = "demo";
        fn outcome(&self) -> Outcome {
            Outcome::Inconclusive
        }
        fn headline(&self) -> String {
            format!("demo {}", self.name)
        }
    }

    #[test]
    fn renders_both_formats() {
        let d = Demo {
            name: "x",
            steps: vec!["a", "b"],
            nested: vec![(1, true)],
        };
        let t = render(&d, Format::Text);
        assert!(t.starts_with("demo x\noutcome: inconclusive\nname: x\nsteps: [a, b]\nnested:\n  [0]: [1, true]\n"), "{t}");
        let j: Value = serde_json::from_str(&render(&d, Format::Json)).unwrap();
        assert_eq!(j["outcome"], "inconclusive");
        assert_eq!(j["report"]["steps"][1], "b");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Outcome::Pass.and(Outcome::Inconclusive).exit_code(), 2);
        assert_eq!(Outcome::Fail.and(Outcome::Inconclusive).exit_code(), 1);
        assert_eq!(Outcome::Pass.exit_code(), 0);
    }
}
