#include "cyclelab/settings.hpp"

namespace cyclelab {

namespace {
const Settings kDefaults{};
thread_local const Settings* tl_settings = nullptr;
}  // namespace

const Settings& settings() { return tl_settings ? *tl_settings : kDefaults; }

ScopedSettings::ScopedSettings(const Settings& s) : previous_(tl_settings), current_(s)
{
    tl_settings = &current_;
}

ScopedSettings::~ScopedSettings() { tl_settings = previous_; }

}  // namespace cyclelab
