//! Parameter resolution: command-line flag, else `key=value` config file
//! entry, else built-in default. Every resolved value is recorded so the run
//! can be written out and replayed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

pub struct Resolver {
    file: BTreeMap<String, String>,
    used: BTreeSet<String>,
    resolved: Vec<(String, String)>,
    degrees: bool,
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("config line {}: expected key=value", n + 1);
        };
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

impl Resolver {
    /// Loads the optional config file and settles the angle unit first.
    pub fn new(config: Option<&Path>, degrees_flag: bool) -> Result<Self> {
        let file = match config {
            Some(p) => {
                parse_config(&fs::read_to_string(p).with_context(|| format!("reading config {}", p.display()))?)?
            }
            None => BTreeMap::new(),
        };
        let mut r = Self { file, used: BTreeSet::new(), resolved: Vec::new(), degrees: false };
        r.used.insert("command".into());
        r.degrees = r.flag("degrees", degrees_flag)?;
        Ok(r)
    }

    fn file_value<T: FromStr>(&mut self, key: &str) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        match self.file.get(key) {
            None => Ok(None),
            Some(raw) => {
                self.used.insert(key.to_string());
                raw.parse::<T>().map(Some).map_err(|e| anyhow::anyhow!("config key {key}: cannot parse {raw:?}: {e}"))
            }
        }
    }

    fn record(&mut self, key: &str, value: String) {
        self.resolved.push((key.to_string(), value));
    }

    pub fn value<T: FromStr + Display + Clone>(&mut self, key: &str, flag: Option<T>, default: T) -> Result<T>
    where
        T::Err: Display,
    {
        let file = self.file_value::<T>(key)?;
        let v = flag.or(file).unwrap_or(default);
        self.record(key, v.to_string());
        Ok(v)
    }

    pub fn optional<T: FromStr + Display + Clone>(&mut self, key: &str, flag: Option<T>) -> Result<Option<T>>
    where
        T::Err: Display,
    {
        let file = self.file_value::<T>(key)?;
        let v = flag.or(file);
        if let Some(x) = &v {
            self.record(key, x.to_string());
        }
        Ok(v)
    }

    /// Boolean switch: on if the flag is given or the file says `true`.
    pub fn flag(&mut self, key: &str, flag: bool) -> Result<bool> {
        let file = self.file_value::<bool>(key)?.unwrap_or(false);
        let v = flag || file;
        self.record(key, v.to_string());
        Ok(v)
    }

    /// Angle in radians; given values are in degrees when `degrees` is on.
    /// The default is always in radians.
    pub fn angle(&mut self, key: &str, flag: Option<f64>, default: f64) -> Result<f64> {
        let given = match flag {
            Some(v) => Some(v),
            None => self.file_value::<f64>(key)?,
        };
        let (raw, rad) = match given {
            Some(v) if self.degrees => (v, v.to_radians()),
            Some(v) => (v, v),
            None if self.degrees => (default.to_degrees(), default),
            None => (default, default),
        };
        self.record(key, raw.to_string());
        Ok(rad)
    }

    pub fn optional_angle(&mut self, key: &str, flag: Option<f64>) -> Result<Option<f64>> {
        let given = match flag {
            Some(v) => Some(v),
            None => self.file_value::<f64>(key)?,
        };
        Ok(given.map(|v| {
            self.record(key, v.to_string());
            if self.degrees {
                v.to_radians()
            } else {
                v
            }
        }))
    }

    /// Config keys that no parameter consumed.
    pub fn unused(&self) -> Vec<&str> {
        self.file.keys().filter(|k| !self.used.contains(*k)).map(String::as_str).collect()
    }

    pub fn render(&self, command: &str) -> String {
        let mut s = format!("command={command}\n");
        for (k, v) in &self.resolved {
            s.push_str(&format!("{k}={v}\n"));
        }
        s
    }

    pub fn write(&self, dir: &Path, command: &str) -> Result<()> {
        let path = dir.join("config.resolved");
        fs::write(&path, self.render(command)).with_context(|| format!("writing {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with_file(text: &str, degrees: bool) -> Resolver {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.cfg");
        fs::write(&p, text).unwrap();
        Resolver::new(Some(&p), degrees).unwrap()
    }

    #[test]
    fn flag_beats_file_beats_default() {
        let mut r = with_file("xi=2\nn=7\n# comment\n", false);
        assert_eq!(r.value("n", Some(9usize), 1).unwrap(), 9);
        assert_eq!(r.angle("xi", None, 0.0).unwrap(), 2.0);
        assert_eq!(r.angle("eta", None, 0.5).unwrap(), 0.5);
        assert_eq!(r.render("x"), "command=x\ndegrees=false\nn=9\nxi=2\neta=0.5\n");
        assert!(r.unused().is_empty());
    }

    #[test]
    fn degrees_convert_given_angles_only() {
        let mut r = with_file("degrees=true\n", false);
        assert!((r.angle("xi", Some(180.0), 0.0).unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert!((r.angle("eta", None, std::f64::consts::PI).unwrap() - std::f64::consts::PI).abs() < 1e-15);
        assert!(r.render("x").contains("eta=180\n"));
    }

    #[test]
    fn bad_values_and_lines() {
        let mut r = with_file("n=abc\nstray=1\n", false);
        assert!(r.value("n", None, 1usize).is_err());
        assert_eq!(r.unused(), ["stray"]);
        assert!(parse_config("novalue").is_err());
    }
}
