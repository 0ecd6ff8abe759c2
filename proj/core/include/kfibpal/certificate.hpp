#pragma once

#include <string>
#include <vector>

#include "kfibpal/pipeline.hpp"

namespace kfibpal::pipeline {

/// JSON certificate, schema 1. Keys appear in a fixed order, scales and
/// lattice entries are exact integer strings, heights carry 10 significant
/// digits, and everything that depends on the working precision sits in the
/// top-level "precision" object. No timings.
std::string certificate_text(const ProofCertificate& cert);

/// Writes certificate_text to `path`; throws std::runtime_error on I/O failure.
void write_certificate(const ProofCertificate& cert, const std::string& path);

/// The certificate with its "precision" object removed, re-serialized.
std::string without_precision(const std::string& text);

struct CertificateSummary {
  int schema = 0;
  std::string tool_version;
  std::string verdict;
  long outer_max = 0;
  long middle_max = 0;
  long index_max = 0;
  long enumeration_limit = 0;
  long large_order_bound = 0;  // 0 when case II was skipped
  std::vector<std::string> discrepancy_ids;
  std::vector<std::string> failures;
};

/// Parses a certificate; throws std::invalid_argument on malformed input or
/// an unknown schema.
CertificateSummary parse_certificate(const std::string& text);

/// Rebuilds the lattice floors recorded for each campaign's worst instance
/// at `extra_digits` above the precision the certificate was made with, and
/// returns one line per mismatch (empty when every floor reproduces).
std::vector<std::string> audit_certificate_floors(const std::string& text, int extra_digits = 100);

}  // namespace kfibpal::pipeline
