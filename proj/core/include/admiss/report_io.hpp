#pragma once

// WindowReport JSON:
//   {"summary": {certified, uncertified[], window, product_of_primes, ...},
//    "certificates": [{offset, evidence_type, prime?, witnesses[], factor?,
//                      reason?, primality_mode}, ...]}

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "admiss/certify.hpp"

namespace admiss {

void write_report(std::ostream& out, const WindowReport& report, const GrowingSet& set,
                  const std::optional<std::string>& generated_at = std::nullopt);

/// Certificates from a report, for re-checking against a set file. Throws
/// SetFileError on malformed input.
std::vector<BlockingCertificate> read_report_certificates(std::istream& in);

}  // namespace admiss
