#include "radnav/artifacts.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "radnav/csvio.hpp"
#include "radnav/errors.hpp"

namespace radnav {

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest failure");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("sha256_file: cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
    out << "k,x_m,y_m,action,epsilon,chosen_q,r_d,r_map,entropy_nats,decision\n";
    for (const auto& r : rows) {
        out << r.k << "," << fmt_double(r.x_m) << "," << fmt_double(r.y_m) << ","
            << r.action << "," << fmt_double(r.epsilon) << "," << fmt_double(r.chosen_q)
            << "," << fmt_double(r.r_d) << "," << fmt_double(r.r_map) << ","
            << fmt_double(r.entropy_nats) << "," << r.decision << "\n";
    }
}

} // namespace radnav
