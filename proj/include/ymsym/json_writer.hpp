#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace ymsym {

// Minimal JSON emitter. Doubles are printed with 17 significant digits so
// that every value round-trips bit-exactly through text.
class JsonWriter {
public:
    std::string str() const { return m_out; }

    JsonWriter& begin_object() { comma(); m_out += '{'; push(true); return *this; }
    JsonWriter& end_object() { m_out += '}'; pop(); return *this; }
    JsonWriter& begin_array() { comma(); m_out += '['; push(false); return *this; }
    JsonWriter& end_array() { m_out += ']'; pop(); return *this; }

    JsonWriter& key(const std::string& k) {
        comma();
        append_string(k);
        m_out += ':';
        m_pending_value = true;
        return *this;
    }

    JsonWriter& value(double v) {
        comma();
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        m_out += buf;
        return *this;
    }
    JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(long long v) {
        comma();
        m_out += std::to_string(v);
        return *this;
    }
    JsonWriter& value(std::size_t v) { return value(static_cast<long long>(v)); }
    JsonWriter& value(bool v) { comma(); m_out += v ? "true" : "false"; return *this; }
    JsonWriter& value(const std::string& s) { comma(); append_string(s); return *this; }
    JsonWriter& value(const char* s) { return value(std::string(s)); }

private:
    void push(bool is_object) { m_stack.push_back({is_object, true}); }
    void pop() {
        if (!m_stack.empty()) m_stack.pop_back();
        if (!m_stack.empty()) m_stack.back().first_item = false;
    }
    void comma() {
        if (m_pending_value) {
            m_pending_value = false;
            return;
        }
        if (m_stack.empty()) return;
        if (m_stack.back().first_item)
            m_stack.back().first_item = false;
        else
            m_out += ',';
    }
    void append_string(const std::string& s) {
        m_out += '"';
        for (char c : s) {
            switch (c) {
                case '"': m_out += "\\\""; break;
                case '\\': m_out += "\\\\"; break;
                case '\n': m_out += "\\n"; break;
                case '\t': m_out += "\\t"; break;
                case '\r': m_out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        m_out += buf;
                    } else {
                        m_out += c;
                    }
            }
        }
        m_out += '"';
    }

    struct Frame {
        bool is_object;
        bool first_item;
    };
    std::string m_out;
    std::vector<Frame> m_stack;
    bool m_pending_value = false;
};

}  // namespace ymsym
