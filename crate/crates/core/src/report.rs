//! Line-oriented JSON records for search reports and CLI output.
//!
//! A report file is one header record followed by one record per friend
//! group:
//!
//! ```text
//! {"record":"search","version":"0.1.0","d":-1,"n":1,"bound":2000,"prune":false,"scanned":620,"certified_count":598,"pruned":0,"groups":0}
//! {"record":"group","d":-1,"n":2,"bound":100,"index_key":"2","members":[[3,1,10],[6,2,40]]}
//! ```
//!
//! Elapsed time is not written, so files are byte-identical across runs.
//! Integers are written and read at full precision.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::time::Duration;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::factor::Factorization;
use crate::ring::{RingElement, RingId};
use crate::scalar::Scalar;
use crate::search::{FriendGroup, Member, SearchReport};
use crate::solitary::SolitaryCertificate;
use crate::surd::SurdValue;

/// Builds one JSON object with fields in insertion order.
#[derive(Clone, Debug)]
pub struct Record {
    buf: String,
}

impl Record {
    pub fn new(kind: &str) -> Self {
        Self {
            buf: String::from("{"),
        }
        .str("record", kind)
    }

    fn key(&mut self, key: &str) {
        if self.buf.len() > 1 {
            self.buf.push(',');
        }
        self.buf.push_str(&quote(key));
        self.buf.push(':');
    }

    pub fn str(mut self, key: &str, value: &str) -> Self {
        self.key(key);
        self.buf.push_str(&quote(value));
        self
    }

    /// `value` must already be valid JSON.
    pub fn raw(mut self, key: &str, value: &str) -> Self {
        self.key(key);
        self.buf.push_str(value);
        self
    }

    pub fn int(self, key: &str, value: impl std::fmt::Display) -> Self {
        self.raw(key, &value.to_string())
    }

    pub fn bool(self, key: &str, value: bool) -> Self {
        self.raw(key, if value { "true" } else { "false" })
    }

    pub fn finish(mut self) -> String {
        self.buf.push('}');
        self.buf
    }
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// `[a,b]`
pub fn coords_json<T: Scalar>(z: &RingElement<T>) -> String {
    format!("[{},{}]", z.a(), z.b())
}

/// `[a,b,norm]`
pub fn member_json<T: Scalar>(m: &Member<T>) -> String {
    format!("[{},{},{}]", m.element.a(), m.element.b(), m.norm)
}

pub fn json_list<I: IntoIterator<Item = String>>(items: I) -> String {
    let items: Vec<String> = items.into_iter().collect();
    format!("[{}]", items.join(","))
}

/// `{"unit":[a,b],"factors":[[a,b,e],...]}`
pub fn factorization_json<T: Scalar>(f: &Factorization<T>) -> String {
    let factors = f
        .factors()
        .iter()
        .map(|(p, e)| format!("[{},{},{}]", p.a(), p.b(), e));
    format!(
        r#"{{"unit":{},"factors":{}}}"#,
        coords_json(f.unit().value()),
        json_list(factors)
    )
}

/// Reason code (or `null`) plus the factorization the verdict was read from.
pub fn certificate_record<T: Scalar>(z: &RingElement<T>, c: &SolitaryCertificate<T>) -> Record {
    let reason = match c.reason() {
        Some(r) => quote(r.code()),
        None => "null".to_string(),
    };
    Record::new("certificate")
        .int("d", z.ring().d())
        .raw("z", &coords_json(z))
        .int("n", c.n())
        .bool("certified", c.is_certified())
        .raw("reason", &reason)
        .raw("factorization", &factorization_json(c.factorization()))
}

fn header_line<T: Scalar>(r: &SearchReport<T>) -> String {
    Record::new("search")
        .str("version", &r.version)
        .int("d", r.ring.d())
        .int("n", r.n)
        .int("bound", r.norm_bound)
        .bool("prune", r.prune)
        .int("scanned", r.scanned)
        .int("certified_count", r.certified_count)
        .int("pruned", r.pruned)
        .int("groups", r.groups.len())
        .finish()
}

pub fn group_line<T: Scalar>(g: &FriendGroup<T>, bound: u64) -> String {
    Record::new("group")
        .int("d", g.ring.d())
        .int("n", g.n)
        .int("bound", bound)
        .str("index_key", &g.index_key.to_string())
        .raw("members", &json_list(g.members.iter().map(member_json)))
        .finish()
}

/// The full report text, newline-terminated.
pub fn report_to_string<T: Scalar>(r: &SearchReport<T>) -> String {
    let mut out = header_line(r);
    out.push('\n');
    for g in &r.groups {
        out.push_str(&group_line(g, r.norm_bound));
        out.push('\n');
    }
    out
}

pub fn write_report_to<T: Scalar, W: Write>(r: &SearchReport<T>, mut w: W) -> Result<()> {
    w.write_all(report_to_string(r).as_bytes())?;
    w.flush()?;
    Ok(())
}

pub fn write_report<T: Scalar>(r: &SearchReport<T>, path: impl AsRef<Path>) -> Result<()> {
    write_report_to(r, BufWriter::new(File::create(path)?))
}

pub fn read_report<T: Scalar>(path: impl AsRef<Path>) -> Result<SearchReport<T>> {
    read_report_from(BufReader::new(File::open(path)?))
}

pub fn report_from_str<T: Scalar>(text: &str) -> Result<SearchReport<T>> {
    read_report_from(text.as_bytes())
}

struct Line<'a> {
    no: usize,
    obj: &'a Map<String, Value>,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.no,
            message: message.into(),
        }
    }

    fn field(&self, key: &str) -> Result<&Value> {
        self.obj
            .get(key)
            .ok_or_else(|| self.err(format!("missing field `{key}`")))
    }

    fn str(&self, key: &str) -> Result<&str> {
        self.field(key)?
            .as_str()
            .ok_or_else(|| self.err(format!("`{key}` must be a string")))
    }

    fn bool(&self, key: &str) -> Result<bool> {
        self.field(key)?
            .as_bool()
            .ok_or_else(|| self.err(format!("`{key}` must be a boolean")))
    }

    fn integer<T: Scalar>(&self, key: &str, v: &Value) -> Result<T> {
        match v {
            Value::Number(num) => T::parse_decimal(&num.to_string())
                .map_err(|_| self.err(format!("`{key}` must be an integer, got {num}"))),
            _ => Err(self.err(format!("`{key}` must be an integer"))),
        }
    }

    fn int<T: Scalar>(&self, key: &str) -> Result<T> {
        self.integer(key, self.field(key)?)
    }

    fn u64(&self, key: &str) -> Result<u64> {
        let v: i128 = self.int(key)?;
        u64::try_from(v).map_err(|_| self.err(format!("`{key}` out of range")))
    }

    fn i64(&self, key: &str) -> Result<i64> {
        self.int(key)
    }
}

fn parse_member<T: Scalar>(line: &Line<'_>, ring: RingId, v: &Value) -> Result<Member<T>> {
    let triple = v
        .as_array()
        .filter(|t| t.len() == 3)
        .ok_or_else(|| line.err("member must be an [a, b, norm] triple"))?;
    let a: T = line.integer("members", &triple[0])?;
    let b: T = line.integer("members", &triple[1])?;
    let norm: T = line.integer("members", &triple[2])?;
    let element = RingElement::new(ring, a, b);
    if element.norm() != norm {
        return Err(line.err(format!("norm {norm} does not match element {element}")));
    }
    Ok(Member { element, norm })
}

pub fn read_report_from<T: Scalar, R: Read>(reader: R) -> Result<SearchReport<T>> {
    let mut lines = BufReader::new(reader).lines();
    let parse = |no: usize, text: std::io::Result<String>| -> Result<Map<String, Value>> {
        let text = text?;
        match serde_json::from_str::<Value>(&text) {
            Ok(Value::Object(obj)) => Ok(obj),
            Ok(_) => Err(Error::Parse {
                line: no,
                message: "expected a JSON object".into(),
            }),
            Err(e) => Err(Error::Parse {
                line: no,
                message: e.to_string(),
            }),
        }
    };

    let header = match lines.next() {
        Some(text) => parse(1, text)?,
        None => {
            return Err(Error::Parse {
                line: 1,
                message: "empty report".into(),
            })
        }
    };
    let h = Line {
        no: 1,
        obj: &header,
    };
    if h.str("record")? != "search" {
        return Err(h.err("first record must be the search header"));
    }
    let d = h.i64("d")?;
    let ring = RingId::new(d).map_err(|e| h.err(e.to_string()))?;
    let n = h.i64("n")?;
    let norm_bound = h.u64("bound")?;
    let expected_groups = h.u64("groups")?;
    let mut report = SearchReport {
        ring,
        n,
        norm_bound,
        prune: h.bool("prune")?,
        groups: Vec::new(),
        scanned: h.u64("scanned")?,
        certified_count: h.u64("certified_count")?,
        pruned: h.u64("pruned")?,
        elapsed: Duration::ZERO,
        version: h.str("version")?.to_string(),
    };

    for (i, text) in lines.enumerate() {
        let no = i + 2;
        let obj = parse(no, text)?;
        let line = Line { no, obj: &obj };
        if line.str("record")? != "group" {
            return Err(line.err("expected a group record"));
        }
        if line.i64("d")? != d || line.i64("n")? != n || line.u64("bound")? != norm_bound {
            return Err(line.err("group does not match the header's d, n and bound"));
        }
        let index_key: SurdValue<T> = line
            .str("index_key")?
            .parse()
            .map_err(|e: Error| line.err(format!("bad index_key: {e}")))?;
        let members = line
            .field("members")?
            .as_array()
            .ok_or_else(|| line.err("`members` must be an array"))?
            .iter()
            .map(|v| parse_member(&line, ring, v))
            .collect::<Result<Vec<_>>>()?;
        report.groups.push(FriendGroup {
            ring,
            n,
            index_key,
            members,
        });
    }

    if report.groups.len() as u64 != expected_groups {
        return Err(Error::Parse {
            line: report.groups.len() + 1,
            message: format!(
                "header announces {expected_groups} groups, found {}",
                report.groups.len()
            ),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::friend_search;
    use num_bigint::BigInt;

    fn sample() -> SearchReport<BigInt> {
        let ring = RingId::GAUSSIAN;
        let m = |a: i64, b: i64| Member::new(RingElement::<BigInt>::from_i64(ring, a, b));
        SearchReport {
            ring,
            n: 1,
            norm_bound: 50,
            prune: false,
            groups: vec![
                FriendGroup {
                    ring,
                    n: 1,
                    index_key: "2".parse().unwrap(),
                    members: vec![m(1, 1), m(3, 0)],
                },
                FriendGroup {
                    ring,
                    n: 1,
                    index_key: "1 + 1/5*sqrt(5)".parse().unwrap(),
                    members: vec![m(1, 2), m(4, 3)],
                },
            ],
            scanned: 17,
            certified_count: 3,
            pruned: 0,
            elapsed: Duration::from_millis(12),
            version: "0.1.0".into(),
        }
    }

    #[test]
    fn round_trip() {
        let r = sample();
        let text = report_to_string(&r);
        assert_eq!(report_from_str::<BigInt>(&text).unwrap(), r);
        assert_eq!(
            report_to_string(&report_from_str::<BigInt>(&text).unwrap()),
            text
        );
        let live = friend_search::<BigInt>(RingId::new(-3).unwrap(), 2, 200, false, 2).unwrap();
        assert_eq!(
            report_from_str::<BigInt>(&report_to_string(&live)).unwrap(),
            live
        );
    }

    #[test]
    fn index_keys_parse() {
        let text = report_to_string(&sample());
        let back = report_from_str::<i64>(&text).unwrap();
        assert_eq!(back.groups[0].index_key, SurdValue::from_integer(2));
        assert_eq!(back.groups[1].index_key.to_string(), "1 + 1/5*sqrt(5)");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = report_to_string(&sample());
        let mut lines: Vec<&str> = text.lines().collect();
        lines[2] =
            r#"{"record":"group","d":-1,"n":1,"bound":50,"index_key":"2","members":[[1,1,3]]}"#;
        match report_from_str::<i64>(&lines.join("\n")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        lines[2] = "not json";
        assert!(matches!(
            report_from_str::<i64>(&lines.join("\n")),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            report_from_str::<i64>(""),
            Err(Error::Parse { line: 1, .. })
        ));
        let truncated = lines[..2].join("\n");
        assert!(matches!(
            report_from_str::<i64>(&truncated),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn big_integers_survive() {
        let ring = RingId::new(-163).unwrap();
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let z = RingElement::new(ring, big.clone(), big);
        let mut r = sample();
        r.ring = ring;
        r.groups = vec![FriendGroup {
            ring,
            n: 1,
            index_key: SurdValue::one(),
            members: vec![Member::new(z)],
        }];
        let back = report_from_str::<BigInt>(&report_to_string(&r)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn certificate_evidence() {
        let z = RingElement::<i64>::from_i64(RingId::GAUSSIAN, 3, 0);
        let c = crate::solitary::certify_solitary(&z, 1).unwrap();
        assert_eq!(
            certificate_record(&z, &c).finish(),
            r#"{"record":"certificate","d":-1,"z":[3,0],"n":1,"certified":true,"reason":"ramified_or_inert_prime_power_odd_n","factorization":{"unit":[1,0],"factors":[[3,0,1]]}}"#
        );
    }

    #[test]
    fn records_are_ordered() {
        let line = Record::new("x")
            .int("d", -1)
            .str("s", "a\"b")
            .bool("t", true)
            .finish();
        assert_eq!(line, r#"{"record":"x","d":-1,"s":"a\"b","t":true}"#);
    }
}
