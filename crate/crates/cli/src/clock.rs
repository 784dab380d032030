//! Wall-clock values, pinned by `SOURCE_DATE_EPOCH` for reproducible output.

use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

fn now() -> OffsetDateTime {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.trim().parse::<i64>().ok())
        .and_then(|s| OffsetDateTime::from_unix_timestamp(s).ok())
        .unwrap_or_else(OffsetDateTime::now_utc)
}

/// RFC 3339 timestamp, whole seconds.
pub fn timestamp() -> String {
    now().replace_nanosecond(0).expect("zero is valid").format(&Rfc3339).expect("RFC 3339 formats")
}

/// YYYY-MM-DD.
pub fn today() -> String {
    let d = now().date();
    format!("{:04}-{:02}-{:02}", d.year(), d.month() as u8, d.day())
}
