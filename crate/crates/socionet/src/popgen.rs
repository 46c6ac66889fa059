//! Desk-scale synthetic population generation.
//!
//! Households are drawn from a configured size distribution, members get
//! an adult flag, adults are assigned to workplaces and minors to schools
//! uniformly, and a configured fraction of adults works the night shift.
//! Generation is a single documented draw stream per `(config, seed)`:
//! household sizes in ascending household order, then one adult-flag draw
//! per agent in id order, then per agent in id order the venue, mall, and
//! (for adults) shift draws. Everything downstream is validated against
//! held-back marginals with the Wasserstein distance.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use sha2::{Digest, Sha256};

use crate::compare::wasserstein1;
use crate::error::{Error, Result};
use crate::graph::Distribution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VenueKind {
    Home,
    Workplace,
    School,
    Mall,
    Entertainment,
}

impl VenueKind {
    pub fn name(&self) -> &'static str {
        match self {
            VenueKind::Home => "home",
            VenueKind::Workplace => "workplace",
            VenueKind::School => "school",
            VenueKind::Mall => "mall",
            VenueKind::Entertainment => "entertainment",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "home" => Some(VenueKind::Home),
            "workplace" => Some(VenueKind::Workplace),
            "school" => Some(VenueKind::School),
            "mall" => Some(VenueKind::Mall),
            "entertainment" => Some(VenueKind::Entertainment),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Venue {
    pub id: u32,
    pub kind: VenueKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    Day,
    Night,
}

impl Shift {
    pub fn name(&self) -> &'static str {
        match self {
            Shift::Day => "day",
            Shift::Night => "night",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Agent {
    pub id: u32,
    pub household: u32,
    pub adult: bool,
    /// Workplace for adults, school for minors.
    pub venue: u32,
    pub shift: Shift,
    pub home: u32,
    pub mall: u32,
}

/// Generator configuration; all marginals are explicit so no external data
/// sources are needed.
#[derive(Debug, Clone, PartialEq)]
pub struct PopConfig {
    pub num_households: u32,
    /// Household size -> probability; must sum to 1.
    pub household_size_dist: BTreeMap<u32, f64>,
    pub adult_fraction: f64,
    pub workplaces: u32,
    pub schools: u32,
    pub malls: u32,
    pub entertainment_venues: u32,
    pub night_shift_fraction: f64,
}

impl Default for PopConfig {
    /// Desk-scale town of roughly a thousand agents.
    fn default() -> Self {
        PopConfig {
            num_households: 440,
            household_size_dist: BTreeMap::from([(1, 0.28), (2, 0.34), (3, 0.22), (4, 0.16)]),
            adult_fraction: 0.75,
            workplaces: 60,
            schools: 2,
            malls: 8,
            entertainment_venues: 45,
            night_shift_fraction: 0.10,
        }
    }
}

impl PopConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_households == 0 {
            return Err(Error::InvalidConfig("num_households must be >= 1".into()));
        }
        if self.household_size_dist.is_empty() {
            return Err(Error::InvalidConfig("household_size_dist is empty".into()));
        }
        let mut total = 0.0;
        for (&size, &p) in &self.household_size_dist {
            if size == 0 {
                return Err(Error::InvalidConfig("household size 0".into()));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidConfig(format!(
                    "probability {p} for household size {size} out of [0, 1]"
                )));
            }
            total += p;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "household size probabilities sum to {total}, expected 1"
            )));
        }
        for (name, count) in [
            ("workplaces", self.workplaces),
            ("schools", self.schools),
            ("malls", self.malls),
            ("entertainment_venues", self.entertainment_venues),
        ] {
            if count == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be >= 1")));
            }
        }
        for (name, x) in [
            ("adult_fraction", self.adult_fraction),
            ("night_shift_fraction", self.night_shift_fraction),
        ] {
            if !(0.0..=1.0).contains(&x) {
                return Err(Error::InvalidConfig(format!("{name} out of [0, 1]")));
            }
        }
        Ok(())
    }

    /// Canonical flat key-value rendering; also the hashing input.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "num_households = {}", self.num_households);
        let dist: Vec<String> = self
            .household_size_dist
            .iter()
            .map(|(s, p)| format!("{s}:{p}"))
            .collect();
        let _ = writeln!(out, "household_size_dist = {}", dist.join(","));
        let _ = writeln!(out, "adult_fraction = {}", self.adult_fraction);
        let _ = writeln!(out, "workplaces = {}", self.workplaces);
        let _ = writeln!(out, "schools = {}", self.schools);
        let _ = writeln!(out, "malls = {}", self.malls);
        let _ = writeln!(out, "entertainment_venues = {}", self.entertainment_venues);
        let _ = writeln!(out, "night_shift_fraction = {}", self.night_shift_fraction);
        out
    }

    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        let mut cfg = PopConfig::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::Parse {
                path: origin.to_string(),
                line: lineno + 1,
                msg,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad("expected `key = value`".into()))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "num_households" => {
                    cfg.num_households = value.parse().map_err(|_| bad(format!("bad count {value:?}")))?
                }
                "household_size_dist" => {
                    let mut dist = BTreeMap::new();
                    for part in value.split(',') {
                        let (s, p) = part
                            .split_once(':')
                            .ok_or_else(|| bad(format!("bad size:prob pair {part:?}")))?;
                        let size: u32 =
                            s.trim().parse().map_err(|_| bad(format!("bad size {s:?}")))?;
                        let prob: f64 =
                            p.trim().parse().map_err(|_| bad(format!("bad prob {p:?}")))?;
                        dist.insert(size, prob);
                    }
                    cfg.household_size_dist = dist;
                }
                "adult_fraction" => {
                    cfg.adult_fraction = value.parse().map_err(|_| bad(format!("bad fraction {value:?}")))?
                }
                "workplaces" => {
                    cfg.workplaces = value.parse().map_err(|_| bad(format!("bad count {value:?}")))?
                }
                "schools" => {
                    cfg.schools = value.parse().map_err(|_| bad(format!("bad count {value:?}")))?
                }
                "malls" => {
                    cfg.malls = value.parse().map_err(|_| bad(format!("bad count {value:?}")))?
                }
                "entertainment_venues" => {
                    cfg.entertainment_venues =
                        value.parse().map_err(|_| bad(format!("bad count {value:?}")))?
                }
                "night_shift_fraction" => {
                    cfg.night_shift_fraction =
                        value.parse().map_err(|_| bad(format!("bad fraction {value:?}")))?
                }
                other => return Err(bad(format!("unknown key {other:?}"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text, &path.display().to_string())
    }

    /// Short fingerprint of the canonical rendering.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_text().as_bytes());
        digest.iter().take(6).fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub agents: Vec<Agent>,
    pub venues: Vec<Venue>,
    pub config_hash: String,
    household_members: Vec<Vec<u32>>,
}

impl Population {
    pub fn num_agents(&self) -> u32 {
        self.agents.len() as u32
    }

    pub fn household_members(&self, household: u32) -> &[u32] {
        &self.household_members[household as usize]
    }

    pub fn num_households(&self) -> u32 {
        self.household_members.len() as u32
    }

    pub fn venues_of_kind(&self, kind: VenueKind) -> Vec<u32> {
        self.venues
            .iter()
            .filter(|v| v.kind == kind)
            .map(|v| v.id)
            .collect()
    }

    /// Realized household-size histogram.
    pub fn household_size_distribution(&self) -> Distribution {
        let mut d = Distribution::new();
        for members in &self.household_members {
            d.add(members.len() as u64, 1);
        }
        d
    }

    fn rebuild_household_index(agents: &[Agent]) -> Vec<Vec<u32>> {
        let num_households = agents.iter().map(|a| a.household + 1).max().unwrap_or(0);
        let mut members = vec![Vec::new(); num_households as usize];
        for a in agents {
            members[a.household as usize].push(a.id);
        }
        members
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "#config {}", self.config_hash);
        for v in &self.venues {
            let _ = writeln!(out, "#venue {} {}", v.id, v.kind.name());
        }
        for a in &self.agents {
            let _ = writeln!(
                out,
                "{} {} {} {} {} {} {}",
                a.id,
                a.household,
                a.venue,
                a.shift.name(),
                u8::from(a.adult),
                a.home,
                a.mall
            );
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn from_text(text: &str, origin: &str) -> Result<Self> {
        let mut config_hash = String::new();
        let mut venues = Vec::new();
        let mut agents = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse {
                path: origin.to_string(),
                line: lineno + 1,
                msg,
            };
            if let Some(rest) = line.strip_prefix("#config") {
                config_hash = rest.trim().to_string();
                continue;
            }
            if let Some(rest) = line.strip_prefix("#venue") {
                let mut parts = rest.split_whitespace();
                let id: u32 = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| bad("bad venue id".into()))?;
                let kind = parts
                    .next()
                    .and_then(VenueKind::parse)
                    .ok_or_else(|| bad("bad venue kind".into()))?;
                venues.push(Venue { id, kind });
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 7 {
                return Err(bad(format!("expected 7 fields, got {}", fields.len())));
            }
            let num = |s: &str| -> Result<u32> {
                s.parse().map_err(|_| bad(format!("bad number {s:?}")))
            };
            agents.push(Agent {
                id: num(fields[0])?,
                household: num(fields[1])?,
                venue: num(fields[2])?,
                shift: match fields[3] {
                    "day" => Shift::Day,
                    "night" => Shift::Night,
                    other => return Err(bad(format!("bad shift {other:?}"))),
                },
                adult: match fields[4] {
                    "1" => true,
                    "0" => false,
                    other => return Err(bad(format!("bad adult flag {other:?}"))),
                },
                home: num(fields[5])?,
                mall: num(fields[6])?,
            });
        }
        for (i, a) in agents.iter().enumerate() {
            if a.id != i as u32 {
                return Err(Error::Parse {
                    path: origin.to_string(),
                    line: 0,
                    msg: format!("agent ids not dense at {}", a.id),
                });
            }
        }
        let household_members = Self::rebuild_household_index(&agents);
        Ok(Population {
            agents,
            venues,
            config_hash,
            household_members,
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text, &path.display().to_string())
    }
}

fn sample_size(dist: &BTreeMap<u32, f64>, rng: &mut impl Rng) -> u32 {
    let draw: f64 = rng.random();
    let mut acc = 0.0;
    let mut last = 1;
    for (&size, &p) in dist {
        acc += p;
        last = size;
        if draw < acc {
            return size;
        }
    }
    last
}

/// Draw a population from the configured marginals. Deterministic for a
/// fixed `(config, seed)` pair.
pub fn sample_population(cfg: &PopConfig, seed: u64) -> Result<Population> {
    cfg.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);

    // Venue table: homes first (one per household), then the public kinds.
    let mut venues = Vec::new();
    let mut next_id = 0u32;
    let mut alloc = |kind: VenueKind, count: u32, venues: &mut Vec<Venue>| -> (u32, u32) {
        let start = next_id;
        for _ in 0..count {
            venues.push(Venue { id: next_id, kind });
            next_id += 1;
        }
        (start, count)
    };
    let (home_start, _) = alloc(VenueKind::Home, cfg.num_households, &mut venues);
    let (work_start, work_count) = alloc(VenueKind::Workplace, cfg.workplaces, &mut venues);
    let (school_start, school_count) = alloc(VenueKind::School, cfg.schools, &mut venues);
    let (mall_start, mall_count) = alloc(VenueKind::Mall, cfg.malls, &mut venues);
    alloc(VenueKind::Entertainment, cfg.entertainment_venues, &mut venues);

    // Pass 1: household sizes, ascending household id.
    let sizes: Vec<u32> = (0..cfg.num_households)
        .map(|_| sample_size(&cfg.household_size_dist, &mut rng))
        .collect();

    // Pass 2: create members with adult flags, ascending agent id.
    let mut agents = Vec::new();
    let mut id = 0u32;
    for (household, &size) in sizes.iter().enumerate() {
        for _ in 0..size {
            agents.push(Agent {
                id,
                household: household as u32,
                adult: rng.random_bool(cfg.adult_fraction),
                venue: 0,
                shift: Shift::Day,
                home: home_start + household as u32,
                mall: 0,
            });
            id += 1;
        }
    }

    // Pass 3: venue, mall, and shift assignments, ascending agent id.
    for a in &mut agents {
        a.venue = if a.adult {
            work_start + rng.random_range(0..work_count)
        } else {
            school_start + rng.random_range(0..school_count)
        };
        a.mall = mall_start + rng.random_range(0..mall_count);
        a.shift = if a.adult && rng.random_bool(cfg.night_shift_fraction) {
            Shift::Night
        } else {
            Shift::Day
        };
    }

    let household_members = Population::rebuild_household_index(&agents);
    Ok(Population {
        agents,
        venues,
        config_hash: cfg.hash(),
        household_members,
    })
}

/// Wasserstein distance between the realized household sizes and a
/// held-out target distribution.
pub fn validate_marginal(pop: &Population, target: &Distribution) -> Result<f64> {
    if pop.agents.is_empty() {
        return Err(Error::InvalidConfig("population is empty".into()));
    }
    wasserstein1(&pop.household_size_distribution(), target)
}
