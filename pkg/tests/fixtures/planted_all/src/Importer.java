package com.example.planted;

import android.mtp.MtpDevice;

public class Importer {
    MtpDevice device;

    void pull(int handle) {
        device.importFile(handle, "/sdcard/pull.jpg");
    }
}
