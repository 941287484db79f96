#pragma once

// JSON encoding of certificates.
//
// Letters appear by name and words as token lists, so a certificate file is
// read against the alphabet of the system it is checked on.  Integers are
// JSON numbers (strings when they do not fit in 64 bits), rationals are
// strings "p/q", and -inf is the string "-inf".  See README.md for the
// field layout of each certificate type.

#include <stdexcept>
#include <string>
#include <string_view>

#include "relsrs/certificate.hpp"

namespace relsrs {

  /// Malformed JSON, unknown type, or a field of the wrong shape.
  class SchemaError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  std::string write_certificate(Certificate const& cert, Alphabet const& alphabet);

  // Throws SchemaError for structural problems and CertificateError for a
  // letter the alphabet does not contain.
  Certificate read_certificate(std::string_view text, Alphabet const& alphabet);
  Certificate read_certificate_file(std::string const& path, Alphabet const& alphabet);

}  // namespace relsrs
