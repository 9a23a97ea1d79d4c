package com.example.text;

import android.telephony.SmsManager;

public class DraftTool {
    void split(String body) {
        SmsManager manager = SmsManager.getDefault();
        manager.divideMessage(body);
    }
}
