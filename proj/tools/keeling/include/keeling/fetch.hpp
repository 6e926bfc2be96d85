#pragma once

#include <string>

#include "savgol/errors.hpp"

namespace keeling {

/// A download failed: bad URL, no connection, or a non-success status.
class FetchError : public savgol::Error {
public:
    using Error::Error;
};

/// Published location of the annual-mean file.
extern const char* const kDefaultDataUrl;

/// Plain GET of a http(s):// URL, returning the body. Throws FetchError on
/// any failure. No caching, no redirects beyond the client defaults.
std::string fetch_url(const std::string& url);

} // namespace keeling
