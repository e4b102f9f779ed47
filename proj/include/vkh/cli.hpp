#pragma once

#include <iosfwd>
#include <string>

namespace vkh {

struct Request {
    std::string subcommand;   // bracket jones ujones kh ukh lee decompose invariants selftest
    std::string input;        // inline PD text
    std::string input_path;   // file with PD text; "-" reads stdin
    std::string ring = "z";
    std::string scheme = "multicore";
    std::string format = "text";
    bool incorporate_sign = false;
    bool debug_dump = false;
    int jobs = 1;
};

// Exit codes: 0 success, 1 input error, 2 internal-consistency failure.
int run(const Request& req, std::ostream& out, std::ostream& err);

// --jobs value if positive, else VKH_JOBS, else the hardware thread count.
int resolve_jobs(int requested);

} // namespace vkh
