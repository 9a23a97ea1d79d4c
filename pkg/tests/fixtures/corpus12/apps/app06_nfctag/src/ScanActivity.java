package com.example.health;

public class ScanActivity {
    void onResume() {
        tracker.ping();
    }
}
