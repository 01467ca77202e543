#pragma once

#include <string>

#include "nctorus/algebra.hpp"
#include "nctorus/flow.hpp"
#include "nctorus/verify.hpp"

namespace nctorus {

/// Element file format: {"theta": x, "bandwidth": B,
/// "entries": [[m, n, re, im], ...]} listing nonzero coefficients.
std::string element_to_json(const FourierElement& a);
FourierElement element_from_json(const std::string& text);
FourierElement load_element(const std::string& path);
void save_element(const std::string& path, const FourierElement& a);

/// One JSON object per line: the per-iteration records, then a final line
/// {"status": ..., "iters": ...}.
std::string flow_trace_to_jsonl(const FlowTrace& t);

/// {"harness", "config", "checks": [...], "pass", "slacks"/"table"}.
std::string summary_to_json(const SummaryReport& r);
std::string summary_to_csv(const SummaryReport& r);

std::string lemma_report_to_json(const LemmaReport& r);
std::string lemma_batch_to_json(const LemmaBatch& b);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a partial file. Creates parent directories.
void write_text_atomic(const std::string& path, const std::string& content);

/// Writes `path` and, when the report has table rows, a CSV twin next to it
/// (same stem, .csv extension).
void write_report_with_csv(const std::string& path, const SummaryReport& r);

}  // namespace nctorus
