//! Command output. The structured form is a versioned record that is a
//! pure function of the inputs.

use std::fmt::Write as _;

use crate::relations::Certificate;

use super::config::Format;

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Certified,
    NotCertified,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Certified => "certified",
            Status::NotCertified => "not-certified",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Certified => 0,
            Status::NotCertified => 2,
            Status::Error => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub fields: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str, status: Status) -> Report {
        Report { command: command.to_string(), status, fields: Vec::new() }
    }

    pub fn with(mut self, k: &str, v: impl ToString) -> Report {
        self.fields.push((k.to_string(), v.to_string()));
        self
    }

    pub fn get(&self, k: &str) -> Option<&str> {
        self.fields.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str())
    }

    pub fn from_certificate(command: &str, c: &Certificate) -> Report {
        let status = if c.certified { Status::Certified } else { Status::NotCertified };
        let mut r = Report::new(command, status).with("identity", &c.identity).with("method", &c.method);
        r.fields.extend(c.details.iter().cloned());
        r
    }

    pub fn error(command: &str, e: &crate::Error) -> Report {
        Report::new(command, Status::Error).with("error", e)
    }

    pub fn render(&self, f: Format) -> String {
        let mut s = String::new();
        match f {
            Format::Structured => {
                writeln!(s, "polylog-report {REPORT_VERSION}").unwrap();
                writeln!(s, "command {}", self.command).unwrap();
                writeln!(s, "status {}", self.status.name()).unwrap();
                for (k, v) in &self.fields {
                    // values never span lines in this format
                    writeln!(s, "{k} {}", v.replace('\n', "\\n")).unwrap();
                }
                writeln!(s, "end").unwrap();
            }
            Format::Human => {
                if self.status != Status::Ok {
                    writeln!(s, "{}: {}", self.command, self.status.name()).unwrap();
                }
                let li = self.get("li");
                for (k, v) in &self.fields {
                    if k == "result" {
                        writeln!(s, "{}", li.unwrap_or(v)).unwrap();
                    } else if k == "li" {
                        continue;
                    } else {
                        writeln!(s, "  {k}: {v}").unwrap();
                    }
                }
            }
        }
        s
    }
}
