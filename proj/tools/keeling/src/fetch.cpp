#include "keeling/fetch.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <fmt/format.h>

namespace keeling {

const char* const kDefaultDataUrl =
    "https://gml.noaa.gov/webdata/ccgg/trends/co2/co2_annmean_mlo.csv";

std::string fetch_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw FetchError(fmt::format("malformed URL \"{}\": expected http:// or https://", url));
    }
    const std::string scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw FetchError(fmt::format("unsupported URL scheme \"{}\"", scheme));
    }
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(base);
    client.set_follow_location(true);
    client.set_connection_timeout(20, 0);
    client.set_read_timeout(60, 0);
    auto res = client.Get(path);
    if (!res) {
        throw FetchError(fmt::format("GET {} failed: {}", url, httplib::to_string(res.error())));
    }
    if (res->status != 200) {
        throw FetchError(fmt::format("GET {} returned status {}", url, res->status));
    }
    return res->body;
}

} // namespace keeling
