//! Classification data: torus normal forms, the tables of maximal free
//! actions, and Eschenburg/Bazaikin enumerators.

pub mod tori;

pub use tori::{
    all_normal_forms, corollary_sp2, corollary_su3, sp_tori, spin6_extra, su_tori, su_tori_rewritten, theorem2_torus,
    TorusName, TorusNormalForm,
};
pub mod tables;

pub use tables::{all_entries, entry_by_row, group_of, smallest_parameter, table_entries, verify_entry, ClassificationEntry, EntryReport, Table, Verification};
pub mod enumerate;

pub use enumerate::{
    canonical_bazaikin, canonical_eschenburg, enumerate_bazaikin, enumerate_eschenburg, write_csv, write_jsonl, BazaikinRecord, CsvRow,
    EschenburgRecord,
};
pub mod scan;

pub use scan::{free_rank2_i64, scan_sp2_two_tori, scan_su3_two_tori, ScanReport};
