#include <lcr/caps.hpp>
#include <lcr/error.hpp>

#include <charconv>
#include <cstdlib>
#include <sstream>

namespace lcr {

auto parse_caps(const std::string & text, Caps base) -> Caps
{
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorKind::InvalidInput, "cap entry '" + item + "' is not key=value");
        auto key = item.substr(0, eq);
        auto text = item.substr(eq + 1);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw Error(ErrorKind::InvalidInput, "cap value '" + text + "' is not a non-negative integer");

        if (key == "power_vars")
            base.power_vars = value;
        else if (key == "unknowns")
            base.unknowns = value;
        else if (key == "nonzeros")
            base.nonzeros = value;
        else if (key == "brute_force")
            base.brute_force = value;
        else
            throw Error(ErrorKind::InvalidInput, "unknown cap '" + key + "'");
    }
    return base;
}

auto caps_from_env() -> Caps
{
    const char * env = std::getenv("LCR_CAPS");
    if (! env)
        return Caps{};
    return parse_caps(env);
}

}
