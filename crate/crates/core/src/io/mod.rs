pub mod campaign;
pub mod fixtures;
pub mod format;
pub mod ledger;

pub use campaign::{emit_report, verify_theorem, CampaignConfig, CampaignReport, Supply, TheoremId, Verdict};
pub use fixtures::FIXTURES;
pub use format::{emit, parse_structure_file, parse_with, AnyPackage, Package, ParseError, ParseErrorKind};
pub use ledger::{merge, parse_ledger, parse_line, LedgerEntry, LedgerError};
